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
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fga/cobyla.hpp"
#include "fga/cvar.hpp"
#include "fga/encoding.hpp"
#include "fga/rng.hpp"
#include "fga/simulator.hpp"

namespace fga {

enum class CostMode { exact, sampled };

struct CostSpec {
    double xi = 0.1;
    CostMode mode = CostMode::exact;
    int shots = 1024;  // sampled mode only

    void validate() const {
        check_xi(xi);
        if (mode == CostMode::sampled && shots < 1)
            throw std::invalid_argument("cost: shots must be >= 1 when sampling");
    }
};

struct EvalPoint {
    double cost = 0.0;
    double fidelity = 0.0;
    std::uint64_t theta_hash = 0;
};

struct ThresholdCrossing {
    double threshold = 0.0;
    std::optional<int> first_eval;  // 1-based evaluation count, if ever reached
};

/// Everything observed during one VQE run: the per-evaluation cost and
/// ground-state fidelity (fidelity is recorded at every cost call, since the
/// simulator exposes the state vector), the first evaluation at which each
/// fidelity threshold was crossed, and the best point found.
struct RunTrace {
    std::vector<EvalPoint> history;
    std::vector<ThresholdCrossing> crossings;
    double best_cost = 0.0;
    std::vector<double> theta_best;
    double final_fidelity = 0.0;  // fidelity at the best-cost evaluation
    double max_fidelity = 0.0;
    int evals_used = 0;
};

inline std::uint64_t hash_parameters(const std::vector<double>& theta) {
    SeedFold fold(0x7468657461ULL);
    for (double t : theta) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(t));
        __builtin_memcpy(&bits, &t, sizeof(bits));
        fold.add(bits);
    }
    return fold.seed();
}

/// I.i.d. uniform angles on [0, 2*pi), deterministic per seed.
inline std::vector<double> random_initial_params(const AnsatzSpec& spec,
                                                 std::uint64_t seed) {
    Rng rng(SeedFold(seed).add("init-params").seed());
    std::vector<double> theta(param_count(spec));
    for (double& t : theta) t = rng.next_unit() * 2.0 * std::numbers::pi;
    return theta;
}

inline RunTrace run_vqe(const EnergyTable& table,
                        const std::vector<std::uint64_t>& ground_set,
                        const AnsatzSpec& spec, const CostSpec& cost,
                        OptimizerConfig opt, std::uint64_t seed,
                        const std::vector<double>& thresholds = {0.01, 0.10}) {
    cost.validate();
    if (table.num_qubits != spec.num_qubits)
        throw std::invalid_argument("run_vqe: table and ansatz qubit counts differ");
    if (ground_set.empty())
        throw std::invalid_argument("run_vqe: empty ground-state set");
    if (opt.max_evals == 0) opt.max_evals = 50 * spec.num_qubits;

    RunTrace trace;
    trace.crossings.reserve(thresholds.size());
    for (double t : thresholds) trace.crossings.push_back({t, std::nullopt});

    CvarEvaluator evaluator(table);
    Rng shot_rng(SeedFold(seed).add("shot-stream").seed());

    auto cost_fn = [&](const std::vector<double>& theta) {
        StateVector state = prepare_state(spec, theta);
        std::vector<double> probs = probabilities(state);
        double value;
        if (cost.mode == CostMode::exact) {
            value = evaluator.cvar(probs, cost.xi);
        } else {
            std::vector<std::uint64_t> shots =
                sample_bitstrings(state, cost.shots, shot_rng.next_u64());
            std::vector<double> energies(shots.size());
            for (std::size_t k = 0; k < shots.size(); ++k)
                energies[k] = table.energies[shots[k]];
            value = cvar_from_samples(std::move(energies), cost.xi);
        }
        double fid = fidelity(state, ground_set);
        trace.history.push_back({value, fid, hash_parameters(theta)});
        int eval_index = static_cast<int>(trace.history.size());
        for (auto& crossing : trace.crossings) {
            if (!crossing.first_eval && fid >= crossing.threshold)
                crossing.first_eval = eval_index;
        }
        return value;
    };

    std::vector<double> theta0 = random_initial_params(spec, seed);
    MinimizeResult result = minimize(cost_fn, theta0, opt);

    trace.best_cost = result.cost_best;
    trace.theta_best = std::move(result.theta_best);
    trace.evals_used = result.evals_used;
    bool found_best = false;
    for (const auto& point : trace.history) {
        trace.max_fidelity = std::max(trace.max_fidelity, point.fidelity);
        if (!found_best && point.cost == trace.best_cost) {
            // first evaluation attaining the best cost
            trace.final_fidelity = point.fidelity;
            found_best = true;
        }
    }
    return trace;
}

}  // namespace fga
