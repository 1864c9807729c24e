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

#include <bit>
#include <catch2/catch_amalgamated.hpp>

#include "fga/encoding.hpp"
#include "fga/rng.hpp"

using namespace fga;

namespace {

FlightGateInstance two_flight_fixture() {
    FlightGateInstance inst;
    inst.num_flights = 2;
    inst.num_gates = 2;
    inst.n_arr = {10, 0};
    inst.n_dep = {0, 5};
    inst.n_trans = {{0, 3}, {0, 0}};
    inst.t_arr = {1, 2};
    inst.t_dep = {3, 1};
    inst.t_gate = {{0, 4}, {4, 0}};
    inst.t_in = {0, 10};
    inst.t_out = {20, 30};
    inst.t_buf = 0;
    return inst;
}

FlightGateInstance random_instance(int flights, int gates, std::uint64_t seed) {
    GenerationConfig cfg;
    cfg.num_flights = flights;
    cfg.num_gates = gates;
    return generate_instance(cfg, seed);
}

}  // namespace

TEST_CASE("default penalties exceed any achievable objective") {
    FlightGateInstance inst = two_flight_fixture();
    auto [lambda_one, lambda_not] = default_penalties(inst);
    REQUIRE(lambda_one == 48.0);  // U = 10*2 + 5*3 + 3*4 = 47
    REQUIRE(lambda_not == 48.0);

    FlightGateInstance zero = inst;
    zero.n_arr = {0, 0};
    zero.n_dep = {0, 0};
    zero.n_trans = {{0, 0}, {0, 0}};
    REQUIRE(default_penalties(zero) == std::pair{1.0, 1.0});

    FlightGateInstance scaled = inst;
    for (auto& v : scaled.n_arr) v *= 10;
    for (auto& v : scaled.n_dep) v *= 10;
    for (auto& row : scaled.n_trans)
        for (auto& v : row) v *= 10;
    REQUIRE(default_penalties(scaled).first == 1.0 + 10 * 47.0);
}

TEST_CASE("QUBO coefficients follow the closed forms") {
    FlightGateInstance inst = two_flight_fixture();
    QuboProblem q = build_qubo(inst, 10.0, 10.0);
    REQUIRE(q.constant == 20.0);  // |F| * lambda_one
    // flight 0, gate 0: 10*1 + 0*3 - 2*10
    REQUIRE(q.linear[0] == -10.0);
    // same (i,alpha) twice picks up the one-gate penalty
    REQUIRE(q.quadratic[0][0] == 10.0);
    // forbidden pair (0,1) sharing gate 0: transfer + lambda_not
    REQUIRE(q.quadratic[0][2] == inst.n_trans[0][1] * inst.t_gate[0][0] + 10.0);

    REQUIRE_THROWS_AS(build_qubo(inst, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("QUBO value: empty bits, feasible bits, violating bits") {
    FlightGateInstance inst = two_flight_fixture();
    auto [lambda_one, lambda_not] = default_penalties(inst);
    QuboProblem q = build_qubo(inst, lambda_one, lambda_not);

    REQUIRE(qubo_value(q, 0) == q.constant);

    // Feasible one-hot bit vectors evaluate to the plain travel time.
    for (const Assignment& a : {Assignment{{0, 1}}, Assignment{{1, 0}}}) {
        std::uint64_t z = encode_onehot(a, inst.num_gates);
        REQUIRE(qubo_value(q, z) == travel_time(inst, a));
    }

    // Two gates set for flight 0: costs at least lambda more than the spread.
    std::uint64_t doubled = encode_onehot({{0, 1}}, 2) | 1ULL << 1;
    REQUIRE(qubo_value(q, doubled) > 47.0);  // any feasible value is <= 47
}

TEST_CASE("Ising transform is an exact re-expression of the QUBO") {
    QuboProblem zero;
    zero.num_vars = 3;
    zero.linear.assign(3, 0.0);
    zero.quadratic.assign(3, std::vector<double>(3, 0.0));
    PauliZPolynomial z = qubo_to_ising(zero);
    REQUIRE(z.constant == 0.0);
    REQUIRE(z.terms.empty());

    QuboProblem single;
    single.num_vars = 1;
    single.linear = {2.0};
    single.quadratic = {{0.0}};
    PauliZPolynomial s = qubo_to_ising(single);
    REQUIRE(s.constant == 1.0);
    REQUIRE(s.terms.size() == 1);
    REQUIRE(s.terms[0].mask == 1);
    REQUIRE(s.terms[0].coeff == -1.0);

    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        FlightGateInstance inst =
            random_instance(2 + seed % 3, 2 + seed % 2, seed);
        auto [lambda_one, lambda_not] = default_penalties(inst);
        QuboProblem q = build_qubo(inst, lambda_one, lambda_not);
        PauliZPolynomial ising = qubo_to_ising(q);
        REQUIRE(q.num_vars <= 16);
        for (std::uint64_t bits = 0; bits < (1ULL << q.num_vars); ++bits) {
            REQUIRE_THAT(ising.energy_at(bits),
                         Catch::Matchers::WithinAbs(qubo_value(q, bits), 1e-9));
        }
    }
}

TEST_CASE("cyclic gate map wraps surplus codewords") {
    REQUIRE(cyclic_gate(3, 3) == 0);
    REQUIRE(cyclic_gate(2, 3) == 2);
    for (int ap = 0; ap < 4; ++ap) REQUIRE(cyclic_gate(ap, 4) == ap);
    REQUIRE_THROWS_AS(cyclic_gate(4, 3), std::out_of_range);
    REQUIRE_THROWS_AS(cyclic_gate(-1, 3), std::out_of_range);
}

TEST_CASE("cyclic preimage counts differ by at most one") {
    for (int gates = 1; gates <= 9; ++gates) {
        auto counts = cyclic_preimage_counts(gates);
        long long lo = counts[0], hi = counts[0], total = 0;
        for (long long c : counts) {
            lo = std::min(lo, c);
            hi = std::max(hi, c);
            total += c;
        }
        REQUIRE(hi - lo <= 1);
        REQUIRE(total == 1LL << bits_per_flight(gates));
    }
}

TEST_CASE("decode uses big-endian codewords, qubit i*M+k") {
    BinaryEncoding enc3{3, 3, 2, 6};
    REQUIRE(decode_bits(0, enc3).gate_of == std::vector<int>{0, 0, 0});

    // flight 0 bits "11": qubits 0 and 1 set -> alpha' = 3 -> gate 0 (mod 3)
    BinaryEncoding enc_one{1, 3, 2, 2};
    REQUIRE(decode_bits(0b11, enc_one).gate_of == std::vector<int>{0});

    // |G| = 4, flight bits "10": qubit 0 set (z_0, the high bit) -> alpha' = 2
    BinaryEncoding enc4{1, 4, 2, 2};
    REQUIRE(decode_bits(0b01, enc4).gate_of == std::vector<int>{2});

    // decode then re-encode of canonical codewords is the identity
    for (int gates = 2; gates <= 6; ++gates) {
        int m = bits_per_flight(gates);
        BinaryEncoding enc{1, gates, m, m};
        for (int alpha = 0; alpha < gates; ++alpha) {
            std::uint64_t z = 0;
            for (int k = 0; k < m; ++k)
                if ((alpha >> (m - 1 - k)) & 1) z |= 1ULL << k;
            REQUIRE(decode_bits(z, enc).gate_of[0] == alpha);
        }
    }
}

TEST_CASE("binary Hamiltonian spot values") {
    // No forbidden pairs: all-zero bits put every flight at gate 0.
    FlightGateInstance inst = two_flight_fixture();
    inst.t_in = {0, 50};
    inst.t_out = {20, 60};  // disjoint windows
    REQUIRE(forbidden_pairs(inst).pairs.empty());
    PauliZPolynomial h = build_binary_hamiltonian(inst, 5.0);
    double expected = 0.0;
    for (int i = 0; i < inst.num_flights; ++i)
        expected += static_cast<double>(inst.n_arr[i] * inst.t_arr[0] +
                                        inst.n_dep[i] * inst.t_dep[0]);
    REQUIRE_THAT(h.energy_at(0), Catch::Matchers::WithinAbs(expected, 1e-9));

    // Single flight, two gates: at most two non-constant single-qubit terms.
    FlightGateInstance single;
    single.num_flights = 1;
    single.num_gates = 2;
    single.n_arr = {3};
    single.n_dep = {2};
    single.n_trans = {{0}};
    single.t_arr = {1, 5};
    single.t_dep = {2, 2};
    single.t_gate = {{0, 3}, {3, 0}};
    single.t_in = {0};
    single.t_out = {10};
    single.t_buf = 0;
    PauliZPolynomial hs = build_binary_hamiltonian(single, 1.0);
    REQUIRE(hs.num_qubits == 1);
    REQUIRE(hs.terms.size() <= 2);
    for (const auto& t : hs.terms) REQUIRE(std::popcount(t.mask) == 1);
}

TEST_CASE("binary Hamiltonian equals travel time plus penalty, exhaustively") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        int flights = 2 + static_cast<int>(seed % 4);
        int gates = 2 + static_cast<int>(seed % 3);
        FlightGateInstance inst = random_instance(flights, gates, seed);
        auto [lambda_one, lambda_not] = default_penalties(inst);
        PauliZPolynomial h = build_binary_hamiltonian(inst, lambda_not);
        BinaryEncoding enc = BinaryEncoding::for_instance(inst);
        ForbiddenPairs fp = forbidden_pairs(inst);
        REQUIRE(enc.num_qubits <= 16);
        for (std::uint64_t z = 0; z < (1ULL << enc.num_qubits); ++z) {
            Assignment a = decode_bits(z, enc);
            double expected =
                travel_time(inst, a) + lambda_not * count_violations(fp, a);
            REQUIRE_THAT(h.energy_at(z),
                         Catch::Matchers::WithinAbs(expected, 1e-9));
        }
    }
}

TEST_CASE("binary Hamiltonian terms touch at most two flights") {
    FlightGateInstance inst = random_instance(4, 5, 77);
    BinaryEncoding enc = BinaryEncoding::for_instance(inst);
    PauliZPolynomial h = build_binary_hamiltonian(inst, 100.0);
    for (const auto& t : h.terms) {
        REQUIRE(std::popcount(t.mask) <= 2 * enc.bits);
        int flights_touched = 0;
        for (int i = 0; i < enc.num_flights; ++i) {
            std::uint64_t block =
                ((1ULL << enc.bits) - 1) << (i * enc.bits);
            if (t.mask & block) ++flights_touched;
        }
        REQUIRE(flights_touched <= 2);
    }
    // O(|F|^2 4^M) bound on the term count
    std::size_t cap = static_cast<std::size_t>(enc.num_flights) *
                      enc.num_flights * (1u << (2 * enc.bits));
    REQUIRE(h.terms.size() <= cap);
}

TEST_CASE("energy table agrees with per-term evaluation") {
    PauliZPolynomial constant_only;
    constant_only.num_qubits = 3;
    constant_only.constant = 2.5;
    EnergyTable t0 = diagonal_energies(constant_only);
    for (double e : t0.energies) REQUIRE(e == 2.5);

    PauliZPolynomial z0;
    z0.num_qubits = 2;
    z0.constant = 1.0;
    z0.terms = {{1.0, 1}};
    EnergyTable t1 = diagonal_energies(z0);
    REQUIRE(t1.energies == std::vector<double>{2.0, 0.0, 2.0, 0.0});

    PauliZPolynomial random_poly;
    random_poly.num_qubits = 8;
    random_poly.constant = 0.25;
    Rng rng(3);
    for (int k = 0; k < 40; ++k) {
        std::uint64_t mask = 1 + rng.next_below(255);
        random_poly.terms.push_back(
            {static_cast<double>(rng.next_int(-20, 20)) / 4.0, mask});
    }
    EnergyTable t2 = diagonal_energies(random_poly);
    for (int trial = 0; trial < 100; ++trial) {
        std::uint64_t z = rng.next_below(256);
        REQUIRE(t2.energies[z] == random_poly.energy_at(z));
    }

    PauliZPolynomial too_big;
    too_big.num_qubits = 30;
    REQUIRE_THROWS_AS(diagonal_energies(too_big), std::runtime_error);
}

TEST_CASE("ground states: uniform table and encoded optima") {
    EnergyTable uniform;
    uniform.num_qubits = 3;
    uniform.energies.assign(8, 4.0);
    GroundStates gs = ground_bitstrings(uniform);
    REQUIRE(gs.states.size() == 8);
    REQUIRE(gs.energy == 4.0);

    for (std::uint64_t seed = 31; seed <= 36; ++seed) {
        FlightGateInstance inst = random_instance(3, 3, seed);
        ExactSolution sol = solve_exact(inst);
        auto [lambda_one, lambda_not] = default_penalties(inst);

        // One-hot ground states are exactly the encoded optima.
        EnergyTable t_one = diagonal_energies(
            qubo_to_ising(build_qubo(inst, lambda_one, lambda_not)));
        GroundStates gs_one = ground_bitstrings(t_one);
        std::vector<std::uint64_t> expected;
        for (const auto& a : sol.optima)
            expected.push_back(encode_onehot(a, inst.num_gates));
        std::sort(expected.begin(), expected.end());
        REQUIRE(gs_one.states == expected);
        REQUIRE(gs_one.energy == sol.optimal_time);

        // Binary ground states are the cyclic-alias closure of the optima:
        // every state decoding to an optimum, and nothing else.
        EnergyTable t_bin =
            diagonal_energies(build_binary_hamiltonian(inst, lambda_not));
        GroundStates gs_bin = ground_bitstrings(t_bin);
        BinaryEncoding enc = BinaryEncoding::for_instance(inst);
        std::vector<std::uint64_t> closure;
        for (std::uint64_t z = 0; z < t_bin.energies.size(); ++z) {
            Assignment a = decode_bits(z, enc);
            if (std::find(sol.optima.begin(), sol.optima.end(), a) !=
                sol.optima.end())
                closure.push_back(z);
        }
        REQUIRE(gs_bin.states == closure);
        REQUIRE(gs_bin.states.size() >= sol.optima.size());
    }
}
