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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "fga/cobyla.hpp"
#include "fga/cvar.hpp"
#include "fga/rng.hpp"
#include "fga/vqe.hpp"

using namespace fga;

namespace {

EnergyTable table_from(std::vector<double> energies) {
    EnergyTable t;
    t.energies = std::move(energies);
    t.num_qubits = 0;
    while ((std::size_t{1} << t.num_qubits) < t.energies.size())
        ++t.num_qubits;
    return t;
}

std::vector<double> random_distribution(int size, Rng& rng) {
    std::vector<double> p(size);
    double sum = 0.0;
    for (double& v : p) {
        v = rng.next_unit() + 1e-6;
        sum += v;
    }
    for (double& v : p) v /= sum;
    return p;
}

}  // namespace

TEST_CASE("sampled CVaR averages the left tail") {
    REQUIRE(cvar_from_samples({4, 2, 1, 3}, 0.5) == 1.5);
    REQUIRE(cvar_from_samples({4, 2, 1, 3}, 1.0) == 2.5);
    REQUIRE(cvar_from_samples({4, 2, 1, 3}, 0.01) == 1.0);
    REQUIRE_THROWS_AS(cvar_from_samples({}, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(cvar_from_samples({1.0}, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(cvar_from_samples({1.0}, 1.5), std::invalid_argument);
}

TEST_CASE("exact CVaR weights the boundary state fractionally") {
    EnergyTable t = table_from({0.0, 2.0});
    std::vector<double> probs = {0.5, 0.5};
    REQUIRE(cvar_exact(probs, t, 0.25) == 0.0);
    REQUIRE_THAT(cvar_exact(probs, t, 0.75),
                 Catch::Matchers::WithinAbs(2.0 / 3.0, 1e-12));
    REQUIRE_THAT(cvar_exact(probs, t, 1.0),
                 Catch::Matchers::WithinAbs(expectation(probs, t), 1e-12));
}

TEST_CASE("expectation basics") {
    EnergyTable t = table_from({1.0, 5.0, 9.0, 13.0});
    REQUIRE(expectation({0.0, 1.0, 0.0, 0.0}, t) == 5.0);
    REQUIRE(expectation({0.25, 0.25, 0.25, 0.25}, t) == 7.0);
}

TEST_CASE("CVaR contracts on random states") {
    Rng rng(2024);
    EnergyTable t = table_from([&] {
        std::vector<double> e(64);
        for (double& v : e) v = static_cast<double>(rng.next_int(-50, 50));
        return e;
    }());
    CvarEvaluator evaluator(t);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> probs = random_distribution(64, rng);

        // xi = 1 recovers the expectation
        REQUIRE_THAT(evaluator.cvar(probs, 1.0),
                     Catch::Matchers::WithinAbs(expectation(probs, t), 1e-12));

        // nondecreasing in xi; bounded by [min-support energy, expectation]
        double prev = -1e300;
        double e_min = 1e300;
        for (std::size_t z = 0; z < probs.size(); ++z)
            if (probs[z] > 0.0) e_min = std::min(e_min, t.energies[z]);
        for (int k = 1; k <= 100; ++k) {
            double xi = static_cast<double>(k) / 100.0;
            double value = evaluator.cvar(probs, xi);
            REQUIRE(value >= prev - 1e-12);
            REQUIRE(value >= e_min - 1e-12);
            REQUIRE(value <= expectation(probs, t) + 1e-12);
            prev = value;
        }
    }
}

TEST_CASE("CVaR is equivariant under constant energy shifts") {
    Rng rng(7);
    EnergyTable t = table_from({3, -1, 4, 1, -5, 9, 2, 6});
    EnergyTable shifted = t;
    for (double& e : shifted.energies) e += 100.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> probs = random_distribution(8, rng);
        double xi = 0.05 + 0.9 * rng.next_unit();
        REQUIRE_THAT(cvar_exact(probs, shifted, xi),
                     Catch::Matchers::WithinAbs(cvar_exact(probs, t, xi) + 100.0,
                                                1e-9));
    }
}

TEST_CASE("sampled and exact CVaR agree when xi*K is integral") {
    // Dyadic setup: K a power of two and integer energies keep every
    // intermediate value exact, so the two formulas must coincide exactly.
    Rng rng(11);
    EnergyTable t = table_from({5, 1, 7, 3});
    const int shots = 64;
    for (double xi : {0.25, 0.5, 0.75, 1.0}) {
        std::vector<double> energies;
        std::vector<double> counts(4, 0.0);
        for (int k = 0; k < shots; ++k) {
            std::uint64_t z = rng.next_below(4);
            energies.push_back(t.energies[z]);
            counts[z] += 1.0;
        }
        std::vector<double> empirical(4);
        for (int z = 0; z < 4; ++z) empirical[z] = counts[z] / shots;
        REQUIRE(cvar_exact(empirical, t, xi) == cvar_from_samples(energies, xi));
    }
}

TEST_CASE("initial parameters are uniform, seeded, and in range") {
    AnsatzSpec spec{4, 3, AnsatzFamily::entangling};
    auto a = random_initial_params(spec, 5);
    auto b = random_initial_params(spec, 5);
    auto c = random_initial_params(spec, 6);
    REQUIRE(a.size() == 12);
    REQUIRE(a == b);
    REQUIRE(a != c);
    for (double v : a) {
        REQUIRE(v >= 0.0);
        REQUIRE(v < 2.0 * std::numbers::pi);
    }
}

TEST_CASE("minimizer converges on a 1-D parabola") {
    auto f = [](const std::vector<double>& x) {
        return (x[0] - 1.0) * (x[0] - 1.0);
    };
    OptimizerConfig cfg;
    cfg.max_evals = 50;
    MinimizeResult r = minimize(f, {0.0}, cfg);
    REQUIRE(std::abs(r.theta_best[0] - 1.0) < 1e-3);
    REQUIRE(r.evals_used <= 50);
}

TEST_CASE("minimizer honors a budget of one evaluation") {
    int calls = 0;
    auto f = [&](const std::vector<double>& x) {
        ++calls;
        return x[0] * x[0];
    };
    OptimizerConfig cfg;
    cfg.max_evals = 1;
    MinimizeResult r = minimize(f, {3.0}, cfg);
    REQUIRE(calls == 1);
    REQUIRE(r.evals_used == 1);
    REQUIRE(r.theta_best == std::vector<double>{3.0});
    REQUIRE(r.cost_best == 9.0);
}

TEST_CASE("minimizer terminates on a constant function") {
    auto f = [](const std::vector<double>&) { return 5.0; };
    OptimizerConfig cfg;
    cfg.max_evals = 200;
    MinimizeResult r = minimize(f, {1.0, 2.0, 3.0}, cfg);
    REQUIRE(r.cost_best == 5.0);
    REQUIRE(r.evals_used <= 200);
}

TEST_CASE("minimizer returns the best of its own log and keeps the budget") {
    // Rough, multimodal landscape.
    auto f = [](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += std::sin(3.0 * x[i]) + 0.1 * (x[i] - 1.0) * (x[i] - 1.0) +
                 0.5 * std::cos(7.0 * x[i] + static_cast<double>(i));
        return s;
    };
    OptimizerConfig cfg;
    cfg.max_evals = 120;
    MinimizeResult r = minimize(f, {0.2, -0.4, 1.7}, cfg);
    REQUIRE(r.evals_used <= 120);
    REQUIRE(static_cast<int>(r.eval_log.size()) == r.evals_used);
    double best = r.eval_log[0].cost;
    for (const auto& rec : r.eval_log) best = std::min(best, rec.cost);
    REQUIRE(r.cost_best == best);
    // replay: the recorded thetas reproduce the recorded costs
    for (int i = 0; i < 5; ++i)
        REQUIRE(f(r.eval_log[i].theta) == r.eval_log[i].cost);
}

TEST_CASE("minimizer converges on a coupled 5-D quadratic") {
    auto f = [](const std::vector<double>& x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double d = x[i] - static_cast<double>(i);
            s += (1.0 + static_cast<double>(i)) * d * d;
            if (i + 1 < x.size())
                s += 0.4 * d * (x[i + 1] - static_cast<double>(i + 1));
        }
        return s;
    };
    OptimizerConfig cfg;
    cfg.max_evals = 500;
    MinimizeResult r = minimize(f, std::vector<double>(5, 0.0), cfg);
    REQUIRE(r.cost_best < 1e-4);
}

TEST_CASE("minimizer rejects non-finite costs and bad configs") {
    auto f = [](const std::vector<double>&) {
        return std::numeric_limits<double>::quiet_NaN();
    };
    OptimizerConfig cfg;
    cfg.max_evals = 10;
    REQUIRE_THROWS_AS(minimize(f, {0.0}, cfg), std::runtime_error);

    OptimizerConfig bad;
    bad.max_evals = 0;
    auto g = [](const std::vector<double>&) { return 0.0; };
    REQUIRE_THROWS_AS(minimize(g, {0.0}, bad), std::invalid_argument);
    bad.max_evals = 5;
    bad.rho_begin = 1e-5;
    REQUIRE_THROWS_AS(minimize(g, {0.0}, bad), std::invalid_argument);
}

TEST_CASE("single-qubit VQE reaches the ground state") {
    EnergyTable t = table_from({0.0, 10.0});
    AnsatzSpec spec{1, 1, AnsatzFamily::entangling};
    CostSpec cost{1.0, CostMode::exact, 0};
    RunTrace trace = run_vqe(t, {0}, spec, cost, {}, 12345);
    REQUIRE(trace.final_fidelity > 0.99);
    REQUIRE(trace.evals_used <= 50);
    REQUIRE(trace.history.size() == static_cast<std::size_t>(trace.evals_used));
}

TEST_CASE("VQE traces are deterministic and internally consistent") {
    EnergyTable t = table_from({0.0, 3.0, 7.0, 1.0});
    AnsatzSpec spec{2, 2, AnsatzFamily::entangling};
    CostSpec cost{0.25, CostMode::exact, 0};
    RunTrace a = run_vqe(t, {0}, spec, cost, {}, 99);
    RunTrace b = run_vqe(t, {0}, spec, cost, {}, 99);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        REQUIRE(a.history[i].cost == b.history[i].cost);
        REQUIRE(a.history[i].fidelity == b.history[i].fidelity);
        REQUIRE(a.history[i].theta_hash == b.history[i].theta_hash);
    }
    REQUIRE(a.evals_used <= 50 * 2);

    // first crossings are consistent with the recorded fidelity history
    for (const auto& crossing : a.crossings) {
        if (!crossing.first_eval) continue;
        int idx = *crossing.first_eval;
        REQUIRE(a.history[idx - 1].fidelity >= crossing.threshold);
        for (int i = 0; i + 1 < idx; ++i)
            REQUIRE(a.history[i].fidelity < crossing.threshold);
    }

    // the 1% crossing can never come after the 10% crossing
    REQUIRE(a.crossings[0].threshold == 0.01);
    REQUIRE(a.crossings[1].threshold == 0.10);
    if (a.crossings[0].first_eval && a.crossings[1].first_eval)
        REQUIRE(*a.crossings[0].first_eval <= *a.crossings[1].first_eval);

    RunTrace c = run_vqe(t, {0}, spec, cost, {}, 100);
    bool differs = c.history.size() != a.history.size();
    for (std::size_t i = 0; !differs && i < c.history.size(); ++i)
        differs = c.history[i].theta_hash != a.history[i].theta_hash;
    REQUIRE(differs);
}

TEST_CASE("sampled-mode VQE is seeded and respects shot counts") {
    EnergyTable t = table_from({0.0, 5.0, 5.0, 5.0});
    AnsatzSpec spec{2, 1, AnsatzFamily::entangling};
    CostSpec cost{0.5, CostMode::sampled, 128};
    RunTrace a = run_vqe(t, {0}, spec, cost, {}, 7);
    RunTrace b = run_vqe(t, {0}, spec, cost, {}, 7);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i)
        REQUIRE(a.history[i].cost == b.history[i].cost);

    CostSpec bad{0.5, CostMode::sampled, 0};
    REQUIRE_THROWS_AS(run_vqe(t, {0}, spec, bad, {}, 7), std::invalid_argument);
}

TEST_CASE("VQE validates its inputs") {
    EnergyTable t = table_from({0.0, 1.0});
    AnsatzSpec wrong{2, 1, AnsatzFamily::entangling};
    CostSpec cost{0.5, CostMode::exact, 0};
    REQUIRE_THROWS_AS(run_vqe(t, {0}, wrong, cost, {}, 1),
                      std::invalid_argument);
    AnsatzSpec right{1, 1, AnsatzFamily::entangling};
    REQUIRE_THROWS_AS(run_vqe(t, {}, right, cost, {}, 1),
                      std::invalid_argument);
}
