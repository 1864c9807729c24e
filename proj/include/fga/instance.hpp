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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fga/rng.hpp"

namespace fga {

/// Flight-gate assignment problem data. All counts and times are integers
/// (stored as long long so products stay exact in double arithmetic).
struct FlightGateInstance {
    int num_flights = 0;
    int num_gates = 0;
    std::vector<long long> n_arr;   // arriving passengers per flight
    std::vector<long long> n_dep;   // departing passengers per flight
    std::vector<std::vector<long long>> n_trans;  // transfer counts, zero diagonal
    std::vector<long long> t_arr;   // walk time gate -> baggage claim, minutes
    std::vector<long long> t_dep;   // walk time security -> gate, minutes
    std::vector<std::vector<long long>> t_gate;   // gate-to-gate walk, symmetric
    std::vector<long long> t_in;    // arrival timestamp per flight
    std::vector<long long> t_out;   // departure timestamp per flight
    long long t_buf = 0;            // buffer between flights sharing a gate

    void validate() const;
};

/// One gate index per flight; by construction every flight has exactly one gate.
struct Assignment {
    std::vector<int> gate_of;

    bool operator==(const Assignment&) const = default;
};

/// Ordered flight pairs (i, j) with t_in[i] < t_in[j] < t_out[i] + t_buf.
/// Flights in a forbidden pair may not share a gate.
struct ForbiddenPairs {
    std::vector<std::pair<int, int>> pairs;  // sorted lexicographically

    bool contains(int i, int j) const {
        return std::binary_search(pairs.begin(), pairs.end(),
                                  std::make_pair(i, j));
    }
};

struct GenerationConfig {
    int num_flights = 4;
    int num_gates = 2;
    long long max_passengers = 9;
    long long time_horizon = 180;  // minutes; t_in drawn from [0, horizon)
    long long min_duration = 30;
    long long max_duration = 90;
    long long t_buf = 15;
    double difficulty_pool_factor = 1.0;  // >= 1; 1 disables filtering

    void validate() const {
        if (num_flights < 1 || num_gates < 1)
            throw std::invalid_argument("generation: need at least one flight and one gate");
        if (max_passengers < 0 || time_horizon < 1 || min_duration < 1 ||
            max_duration < min_duration || t_buf < 0)
            throw std::invalid_argument("generation: invalid bounds");
        if (difficulty_pool_factor < 1.0)
            throw std::invalid_argument("generation: difficulty_pool_factor must be >= 1");
    }
};

inline void FlightGateInstance::validate() const {
    auto fail = [](const std::string& msg) {
        throw std::invalid_argument("instance: " + msg);
    };
    if (num_flights < 1 || num_gates < 1) fail("empty flight or gate set");
    auto f = static_cast<std::size_t>(num_flights);
    auto g = static_cast<std::size_t>(num_gates);
    if (n_arr.size() != f || n_dep.size() != f || t_in.size() != f ||
        t_out.size() != f || n_trans.size() != f)
        fail("flight-indexed field has wrong length");
    if (t_arr.size() != g || t_dep.size() != g || t_gate.size() != g)
        fail("gate-indexed field has wrong length");
    if (t_buf < 0) fail("negative buffer time");
    for (std::size_t i = 0; i < f; ++i) {
        if (n_arr[i] < 0 || n_dep[i] < 0) fail("negative passenger count");
        if (t_in[i] >= t_out[i]) fail("t_in must precede t_out");
        if (n_trans[i].size() != f) fail("n_trans is not |F|x|F|");
        for (std::size_t j = 0; j < f; ++j) {
            if (n_trans[i][j] < 0) fail("negative transfer count");
            if (i == j && n_trans[i][j] != 0) fail("n_trans diagonal must be zero");
        }
    }
    for (std::size_t a = 0; a < g; ++a) {
        if (t_arr[a] < 0 || t_dep[a] < 0) fail("negative walk time");
        if (t_gate[a].size() != g) fail("t_gate is not |G|x|G|");
        for (std::size_t b = 0; b < g; ++b) {
            if (t_gate[a][b] < 0) fail("negative gate-to-gate time");
            if (t_gate[a][b] != t_gate[b][a]) fail("t_gate must be symmetric");
            if (a == b && t_gate[a][b] != 0) fail("t_gate diagonal must be zero");
        }
    }
}

inline ForbiddenPairs forbidden_pairs(const FlightGateInstance& inst) {
    ForbiddenPairs fp;
    for (int i = 0; i < inst.num_flights; ++i) {
        for (int j = 0; j < inst.num_flights; ++j) {
            if (i == j) continue;
            if (inst.t_in[i] < inst.t_in[j] &&
                inst.t_in[j] < inst.t_out[i] + inst.t_buf) {
                fp.pairs.emplace_back(i, j);
            }
        }
    }
    std::sort(fp.pairs.begin(), fp.pairs.end());
    return fp;
}

/// Total passenger travel time of an assignment. Exact for integer inputs
/// (all intermediate values stay far below 2^53).
inline double travel_time(const FlightGateInstance& inst, const Assignment& a) {
    if (a.gate_of.size() != static_cast<std::size_t>(inst.num_flights))
        throw std::invalid_argument("travel_time: assignment length mismatch");
    double total = 0.0;
    for (int i = 0; i < inst.num_flights; ++i) {
        int g = a.gate_of[i];
        if (g < 0 || g >= inst.num_gates)
            throw std::out_of_range("travel_time: gate index out of range");
        total += static_cast<double>(inst.n_arr[i] * inst.t_arr[g]);
        total += static_cast<double>(inst.n_dep[i] * inst.t_dep[g]);
    }
    for (int i = 0; i < inst.num_flights; ++i) {
        for (int j = 0; j < inst.num_flights; ++j) {
            long long n = inst.n_trans[i][j];
            if (n != 0) {
                total += static_cast<double>(
                    n * inst.t_gate[a.gate_of[i]][a.gate_of[j]]);
            }
        }
    }
    return total;
}

/// Number of forbidden pairs sharing a gate under the given assignment.
inline int count_violations(const ForbiddenPairs& fp, const Assignment& a) {
    int v = 0;
    for (const auto& [i, j] : fp.pairs) {
        if (a.gate_of[i] == a.gate_of[j]) ++v;
    }
    return v;
}

inline bool is_feasible(const FlightGateInstance& inst, const Assignment& a) {
    if (a.gate_of.size() != static_cast<std::size_t>(inst.num_flights))
        throw std::invalid_argument("is_feasible: assignment length mismatch");
    return count_violations(forbidden_pairs(inst), a) == 0;
}

namespace detail {

/// Visits all |G|^|F| assignments in lexicographic order (last flight fastest).
/// The visitor receives each assignment; return value of the enumeration is
/// the number visited.
template <typename Visitor>
void for_each_assignment(int num_flights, int num_gates, Visitor&& visit) {
    Assignment a;
    a.gate_of.assign(num_flights, 0);
    while (true) {
        visit(const_cast<const Assignment&>(a));
        int k = num_flights - 1;
        while (k >= 0 && a.gate_of[k] == num_gates - 1) {
            a.gate_of[k] = 0;
            --k;
        }
        if (k < 0) break;
        ++a.gate_of[k];
    }
}

inline double assignment_count(int num_flights, int num_gates) {
    return std::pow(static_cast<double>(num_gates),
                    static_cast<double>(num_flights));
}

constexpr double kEnumerationCap = 1e8;

/// Backtracking existence check: is there any assignment with no forbidden
/// pair sharing a gate? Cheap interval-graph coloring test used by the
/// generator before committing to full enumeration.
inline bool feasible_assignment_exists(int num_flights, int num_gates,
                                       const ForbiddenPairs& fp) {
    std::vector<std::vector<int>> conflicts(num_flights);
    for (const auto& [i, j] : fp.pairs) {
        conflicts[i].push_back(j);
        conflicts[j].push_back(i);
    }
    std::vector<int> gate(num_flights, -1);
    auto assign = [&](auto&& self, int flight) -> bool {
        if (flight == num_flights) return true;
        for (int g = 0; g < num_gates; ++g) {
            bool ok = true;
            for (int other : conflicts[flight]) {
                if (gate[other] == g) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                gate[flight] = g;
                if (self(self, flight + 1)) return true;
                gate[flight] = -1;
            }
        }
        return false;
    };
    return assign(assign, 0);
}

}  // namespace detail

struct ExactSolution {
    double optimal_time = 0.0;
    std::vector<Assignment> optima;  // every assignment attaining the optimum
};

/// Brute-force enumeration of all |G|^|F| assignments. Integer inputs make
/// travel times exactly representable, so the tie set uses equality.
inline ExactSolution solve_exact(const FlightGateInstance& inst) {
    if (detail::assignment_count(inst.num_flights, inst.num_gates) >
        detail::kEnumerationCap)
        throw std::runtime_error("solve_exact: enumeration cap exceeded");
    ForbiddenPairs fp = forbidden_pairs(inst);
    ExactSolution sol;
    bool found = false;
    detail::for_each_assignment(
        inst.num_flights, inst.num_gates, [&](const Assignment& a) {
            if (count_violations(fp, a) != 0) return;
            double t = travel_time(inst, a);
            if (!found || t < sol.optimal_time) {
                found = true;
                sol.optimal_time = t;
                sol.optima.clear();
                sol.optima.push_back(a);
            } else if (t == sol.optimal_time) {
                sol.optima.push_back(a);
            }
        });
    if (!found) throw std::runtime_error("solve_exact: no feasible assignment");
    return sol;
}

enum class EncodingScheme { one_hot, binary };

/// Bits per flight in the binary encoding: ceil(log2 |G|).
inline int bits_per_flight(int num_gates) {
    int m = 0;
    while ((1 << m) < num_gates) ++m;
    return m;
}

/// How many of the 2^M codewords map onto each gate under alpha' mod |G|.
inline std::vector<long long> cyclic_preimage_counts(int num_gates) {
    int m = bits_per_flight(num_gates);
    std::vector<long long> counts(num_gates, 0);
    for (int ap = 0; ap < (1 << m); ++ap) counts[ap % num_gates]++;
    return counts;
}

/// Closed-form fraction of one-hot basis states satisfying the one-gate-per-
/// flight constraint: (|G| / 2^|G|)^|F|.
inline double onehot_constraint1_ratio(int num_flights, int num_gates) {
    return std::pow(static_cast<double>(num_gates) /
                        std::ldexp(1.0, num_gates),
                    static_cast<double>(num_flights));
}

/// Exact fraction of basis states decoding to feasible assignments, for
/// either encoding. Counts assignments (with cyclic preimage multiplicity in
/// the binary case) rather than walking all 2^n basis states; the two are
/// equivalent because infeasible one-hot patterns decode to nothing.
inline double feasible_ratio(const FlightGateInstance& inst,
                             EncodingScheme scheme) {
    if (detail::assignment_count(inst.num_flights, inst.num_gates) >
        detail::kEnumerationCap)
        throw std::runtime_error("feasible_ratio: enumeration cap exceeded");
    ForbiddenPairs fp = forbidden_pairs(inst);
    double count = 0.0;
    std::vector<long long> mult = cyclic_preimage_counts(inst.num_gates);
    detail::for_each_assignment(
        inst.num_flights, inst.num_gates, [&](const Assignment& a) {
            if (count_violations(fp, a) != 0) return;
            if (scheme == EncodingScheme::one_hot) {
                count += 1.0;
            } else {
                double w = 1.0;
                for (int g : a.gate_of) w *= static_cast<double>(mult[g]);
                count += w;
            }
        });
    int n = scheme == EncodingScheme::one_hot
                ? inst.num_flights * inst.num_gates
                : inst.num_flights * bits_per_flight(inst.num_gates);
    return count / std::ldexp(1.0, n);
}

inline FlightGateInstance generate_instance(const GenerationConfig& config,
                                            std::uint64_t seed) {
    config.validate();
    Rng rng(SeedFold(seed).add("instance").seed());
    constexpr int kRetryCap = 1000;
    for (int attempt = 0; attempt < kRetryCap; ++attempt) {
        FlightGateInstance inst;
        inst.num_flights = config.num_flights;
        inst.num_gates = config.num_gates;
        inst.t_buf = config.t_buf;

        // Gates sit on a 1-D concourse with the baggage claim at position 0
        // and the security checkpoint at the far end.
        long long concourse = 5LL * config.num_gates;
        std::vector<long long> pos(config.num_gates);
        for (auto& p : pos) p = rng.next_int(0, concourse);
        inst.t_arr = pos;
        inst.t_dep.resize(config.num_gates);
        for (int g = 0; g < config.num_gates; ++g)
            inst.t_dep[g] = concourse - pos[g];
        inst.t_gate.assign(config.num_gates,
                           std::vector<long long>(config.num_gates, 0));
        for (int a = 0; a < config.num_gates; ++a)
            for (int b = 0; b < config.num_gates; ++b)
                inst.t_gate[a][b] = std::llabs(pos[a] - pos[b]);

        inst.t_in.resize(config.num_flights);
        inst.t_out.resize(config.num_flights);
        for (int i = 0; i < config.num_flights; ++i) {
            inst.t_in[i] = rng.next_int(0, config.time_horizon - 1);
            inst.t_out[i] = inst.t_in[i] + rng.next_int(config.min_duration,
                                                        config.max_duration);
        }

        inst.n_arr.resize(config.num_flights);
        inst.n_dep.resize(config.num_flights);
        for (int i = 0; i < config.num_flights; ++i) {
            inst.n_arr[i] = rng.next_int(0, config.max_passengers);
            inst.n_dep[i] = rng.next_int(0, config.max_passengers);
        }
        inst.n_trans.assign(config.num_flights,
                            std::vector<long long>(config.num_flights, 0));
        for (int i = 0; i < config.num_flights; ++i)
            for (int j = 0; j < config.num_flights; ++j)
                if (i != j)
                    inst.n_trans[i][j] = rng.next_int(0, config.max_passengers);

        ForbiddenPairs fp = forbidden_pairs(inst);
        if (config.num_flights >= 2 && fp.pairs.empty()) continue;
        if (!detail::feasible_assignment_exists(config.num_flights,
                                                config.num_gates, fp))
            continue;
        return inst;
    }
    throw std::runtime_error(
        "generate_instance: retry cap exceeded (config cannot produce a "
        "solvable instance with overlapping flights)");
}

/// Ranks instances hardest-first and keeps the first `keep`. The proxy:
/// fewer feasible assignments within 5% of the optimum means a sharper
/// landscape, hence harder; ties prefer the larger feasible set (more
/// haystack around the needle). Deterministic.
inline std::vector<FlightGateInstance> difficulty_filter(
    const std::vector<FlightGateInstance>& pool, int keep) {
    if (keep < 0 || keep > static_cast<int>(pool.size()))
        throw std::invalid_argument("difficulty_filter: keep out of range");
    struct Rank {
        long long near_optima;
        long long feasible;
        int index;
    };
    std::vector<Rank> ranks;
    ranks.reserve(pool.size());
    for (int idx = 0; idx < static_cast<int>(pool.size()); ++idx) {
        const auto& inst = pool[idx];
        ExactSolution sol = solve_exact(inst);
        double cutoff = sol.optimal_time * 1.05;
        ForbiddenPairs fp = forbidden_pairs(inst);
        long long near = 0, feas = 0;
        detail::for_each_assignment(
            inst.num_flights, inst.num_gates, [&](const Assignment& a) {
                if (count_violations(fp, a) != 0) return;
                ++feas;
                if (travel_time(inst, a) <= cutoff) ++near;
            });
        ranks.push_back({near, feas, idx});
    }
    std::sort(ranks.begin(), ranks.end(), [](const Rank& x, const Rank& y) {
        if (x.near_optima != y.near_optima) return x.near_optima < y.near_optima;
        if (x.feasible != y.feasible) return x.feasible > y.feasible;
        return x.index < y.index;
    });
    std::vector<FlightGateInstance> out;
    out.reserve(keep);
    for (int k = 0; k < keep; ++k) out.push_back(pool[ranks[k].index]);
    return out;
}

}  // namespace fga
