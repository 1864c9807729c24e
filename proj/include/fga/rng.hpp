// Copyright 2026 The fga-vqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string_view>

namespace fga {

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// SplitMix64 generator. Used everywhere instead of <random> engines and
/// distributions, whose outputs are not pinned down by the standard; streams
/// from this class are identical on every platform and compiler.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return splitmix64_mix(state_);
    }

    /// Unbiased integer in [0, bound) via rejection sampling. bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound <= 1) {
            return 0;
        }
        // Largest multiple of bound that fits in 64 bits.
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

    /// Integer uniform on the inclusive range [lo, hi].
    long long next_int(long long lo, long long hi) {
        return lo + static_cast<long long>(
                        next_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    /// Double uniform on [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

/// Splittable-seed rule used for every independent stream in the project:
/// FNV-1a over the base seed bytes plus tagged components, finalized with the
/// SplitMix64 mixer. The same (base, tag, parts) always names the same
/// stream, independent of evaluation order or thread schedule.
class SeedFold {
  public:
    explicit SeedFold(std::uint64_t base) { add(base); }

    SeedFold& add(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            absorb(static_cast<unsigned char>(v >> (8 * i)));
        }
        return *this;
    }

    SeedFold& add(std::string_view s) {
        for (unsigned char c : s) {
            absorb(c);
        }
        absorb(0xFF);  // separator, so ("ab","c") != ("a","bc")
        return *this;
    }

    std::uint64_t seed() const { return splitmix64_mix(hash_); }

  private:
    void absorb(unsigned char byte) {
        hash_ ^= byte;
        hash_ *= 0x100000001B3ULL;
    }

    std::uint64_t hash_ = 0xCBF29CE484222325ULL;
};

}  // namespace fga
