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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fga/encoding.hpp"

namespace fga {

inline void check_xi(double xi) {
    if (!(xi > 0.0) || xi > 1.0)
        throw std::invalid_argument("cvar: xi must lie in (0, 1]");
}

/// Sample estimator: mean of the ceil(xi * K) smallest energies.
inline double cvar_from_samples(std::vector<double> energies, double xi) {
    check_xi(xi);
    if (energies.empty())
        throw std::invalid_argument("cvar_from_samples: empty sample list");
    std::sort(energies.begin(), energies.end());
    auto keep = static_cast<std::size_t>(
        std::ceil(xi * static_cast<double>(energies.size())));
    keep = std::clamp<std::size_t>(keep, 1, energies.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < keep; ++i) sum += energies[i];
    return sum / static_cast<double>(keep);
}

/// Exact left-tail conditional expectation over a full distribution. States
/// are consumed in ascending energy order (ties broken by basis index, which
/// cannot change the value); the state straddling the xi boundary enters
/// with the residual weight.
///
/// Sorting the table per call is fine for one-off use; the VQE loop uses
/// CvarEvaluator below, which reuses one sorted order across evaluations.
class CvarEvaluator {
  public:
    explicit CvarEvaluator(const EnergyTable& table) : table_(&table) {
        order_.resize(table.energies.size());
        std::iota(order_.begin(), order_.end(), std::uint64_t{0});
        std::sort(order_.begin(), order_.end(),
                  [&](std::uint64_t a, std::uint64_t b) {
                      if (table.energies[a] != table.energies[b])
                          return table.energies[a] < table.energies[b];
                      return a < b;
                  });
    }

    double cvar(const std::vector<double>& probs, double xi) const {
        check_xi(xi);
        if (probs.size() != table_->energies.size())
            throw std::invalid_argument("cvar: distribution size mismatch");
        double remaining = xi;
        double weighted = 0.0;
        for (std::uint64_t z : order_) {
            double w = std::min(probs[z], remaining);
            weighted += w * table_->energies[z];
            remaining -= w;
            if (remaining <= 0.0) break;
        }
        return weighted / xi;
    }

  private:
    const EnergyTable* table_;
    std::vector<std::uint64_t> order_;
};

inline double cvar_exact(const std::vector<double>& probs,
                         const EnergyTable& table, double xi) {
    return CvarEvaluator(table).cvar(probs, xi);
}

inline double expectation(const std::vector<double>& probs,
                          const EnergyTable& table) {
    if (probs.size() != table.energies.size())
        throw std::invalid_argument("expectation: distribution size mismatch");
    double e = 0.0;
    for (std::size_t z = 0; z < probs.size(); ++z)
        e += probs[z] * table.energies[z];
    return e;
}

}  // namespace fga
