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
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fga/rng.hpp"

namespace fga {

enum class AnsatzFamily { entangling, product };

/// Circuit shape: l columns of R_Y rotations, with an inter-layer block
/// between consecutive columns. The entangling family uses a linear CNOT
/// chain (control q, target q+1); the product family a T gate per qubit.
/// l = 1 therefore prepares a product state in both families.
struct AnsatzSpec {
    int num_qubits = 0;
    int layers = 1;
    AnsatzFamily family = AnsatzFamily::entangling;
};

inline int param_count(const AnsatzSpec& spec) {
    return spec.num_qubits * spec.layers;
}

/// Dense amplitudes over 2^n basis states; qubit p is bit p of the index
/// (qubit 0 = least significant bit).
struct StateVector {
    int num_qubits = 0;
    std::vector<std::complex<double>> amplitudes;
};

constexpr int kSimulatorMaxQubits = 24;

namespace detail {

inline void apply_ry(std::vector<std::complex<double>>& amp, int qubit,
                     double theta) {
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    const std::uint64_t bit = 1ULL << qubit;
    for (std::uint64_t z = 0; z < amp.size(); ++z) {
        if (z & bit) continue;
        std::complex<double> a0 = amp[z];
        std::complex<double> a1 = amp[z | bit];
        amp[z] = c * a0 - s * a1;
        amp[z | bit] = s * a0 + c * a1;
    }
}

inline void apply_cnot(std::vector<std::complex<double>>& amp, int control,
                       int target) {
    const std::uint64_t cbit = 1ULL << control;
    const std::uint64_t tbit = 1ULL << target;
    for (std::uint64_t z = 0; z < amp.size(); ++z) {
        if ((z & cbit) && !(z & tbit)) std::swap(amp[z], amp[z | tbit]);
    }
}

inline void apply_t(std::vector<std::complex<double>>& amp, int qubit) {
    const std::complex<double> phase =
        std::polar(1.0, std::numbers::pi / 4.0);
    const std::uint64_t bit = 1ULL << qubit;
    for (std::uint64_t z = 0; z < amp.size(); ++z) {
        if (z & bit) amp[z] *= phase;
    }
}

}  // namespace detail

inline StateVector prepare_state(const AnsatzSpec& spec,
                                 const std::vector<double>& theta) {
    if (spec.num_qubits < 1 || spec.num_qubits > kSimulatorMaxQubits)
        throw std::invalid_argument("prepare_state: qubit count out of range");
    if (spec.layers < 1)
        throw std::invalid_argument("prepare_state: need at least one layer");
    if (theta.size() != static_cast<std::size_t>(param_count(spec)))
        throw std::invalid_argument("prepare_state: parameter length mismatch");
    for (double t : theta) {
        if (!std::isfinite(t))
            throw std::invalid_argument("prepare_state: non-finite parameter");
    }
    const int n = spec.num_qubits;
    StateVector state;
    state.num_qubits = n;
    state.amplitudes.assign(std::size_t{1} << n, {0.0, 0.0});
    state.amplitudes[0] = {1.0, 0.0};
    for (int layer = 0; layer < spec.layers; ++layer) {
        for (int q = 0; q < n; ++q) {
            detail::apply_ry(state.amplitudes, q, theta[layer * n + q]);
        }
        if (layer + 1 == spec.layers) break;
        if (spec.family == AnsatzFamily::entangling) {
            for (int q = 0; q + 1 < n; ++q)
                detail::apply_cnot(state.amplitudes, q, q + 1);
        } else {
            for (int q = 0; q < n; ++q) detail::apply_t(state.amplitudes, q);
        }
    }
    return state;
}

inline std::vector<double> probabilities(const StateVector& state) {
    std::vector<double> probs(state.amplitudes.size());
    for (std::size_t z = 0; z < probs.size(); ++z)
        probs[z] = std::norm(state.amplitudes[z]);
    return probs;
}

/// K i.i.d. measurement outcomes via inverse-CDF sampling; deterministic for
/// a fixed seed.
inline std::vector<std::uint64_t> sample_bitstrings(const StateVector& state,
                                                    int shots,
                                                    std::uint64_t seed) {
    if (shots < 1)
        throw std::invalid_argument("sample_bitstrings: shots must be >= 1");
    std::vector<double> cdf = probabilities(state);
    for (std::size_t z = 1; z < cdf.size(); ++z) cdf[z] += cdf[z - 1];
    Rng rng(SeedFold(seed).add("shots").seed());
    std::vector<std::uint64_t> samples(shots);
    for (int k = 0; k < shots; ++k) {
        double u = rng.next_unit() * cdf.back();
        auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
        if (it == cdf.end()) --it;
        samples[k] = static_cast<std::uint64_t>(it - cdf.begin());
    }
    return samples;
}

/// Probability of sampling any state from `ground_set`.
inline double fidelity(const StateVector& state,
                       const std::vector<std::uint64_t>& ground_set) {
    if (ground_set.empty())
        throw std::invalid_argument("fidelity: empty ground-state set");
    double f = 0.0;
    for (std::uint64_t z : ground_set) f += std::norm(state.amplitudes.at(z));
    return f;
}

}  // namespace fga
