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

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "fga/instance.hpp"

namespace fga {

// Bit conventions used throughout: qubit p is bit p of a basis index
// (qubit 0 = least significant bit), and x_p = 1 corresponds to the Pauli-Z
// eigenvalue -1 via x = (1 - Z)/2.

/// One Pauli-Z monomial: coeff * prod_{p in mask} Z_p.
struct PauliZTerm {
    double coeff = 0.0;
    std::uint64_t mask = 0;
};

/// Diagonal operator c + sum_t coeff_t * prod_{p in mask_t} Z_p. Masks are
/// distinct and nonzero; the identity component lives in `constant`.
struct PauliZPolynomial {
    int num_qubits = 0;
    double constant = 0.0;
    std::vector<PauliZTerm> terms;  // sorted by mask

    /// Energy of basis state z: constant + sum coeff * (-1)^popcount(mask & z).
    double energy_at(std::uint64_t z) const {
        double e = constant;
        for (const auto& t : terms) {
            e += (std::popcount(t.mask & z) & 1) ? -t.coeff : t.coeff;
        }
        return e;
    }
};

namespace detail {

constexpr double kCoeffDropTolerance = 1e-12;

/// Collects coefficients by mask, then emits a canonical polynomial: the
/// empty mask folds into the constant, near-zero coefficients are dropped,
/// terms are sorted by mask.
inline PauliZPolynomial canonicalize(int num_qubits, double constant,
                                     const std::map<std::uint64_t, double>& acc) {
    PauliZPolynomial poly;
    poly.num_qubits = num_qubits;
    poly.constant = constant;
    for (const auto& [mask, coeff] : acc) {
        if (mask == 0) {
            poly.constant += coeff;
        } else if (std::abs(coeff) > kCoeffDropTolerance) {
            poly.terms.push_back({coeff, mask});
        }
    }
    return poly;
}

}  // namespace detail

/// QUBO cost Q(x) = c + sum_p h_p x_p + sum_{pq} J_pq x_p x_q over binary
/// variables indexed p = flight * |G| + gate. The quadratic double sum runs
/// over all ordered pairs including p = q.
struct QuboProblem {
    int num_vars = 0;
    double constant = 0.0;
    std::vector<double> linear;
    std::vector<std::vector<double>> quadratic;
};

/// Penalty weights large enough that one constraint violation always costs
/// more than the whole achievable objective spread: 1 + sum of each
/// passenger block times its worst-case walk time.
inline std::pair<double, double> default_penalties(
    const FlightGateInstance& inst) {
    long long max_arr = 0, max_dep = 0, max_gate = 0;
    for (int g = 0; g < inst.num_gates; ++g) {
        max_arr = std::max(max_arr, inst.t_arr[g]);
        max_dep = std::max(max_dep, inst.t_dep[g]);
        for (int h = 0; h < inst.num_gates; ++h)
            max_gate = std::max(max_gate, inst.t_gate[g][h]);
    }
    long long bound = 0;
    for (int i = 0; i < inst.num_flights; ++i) {
        bound += inst.n_arr[i] * max_arr;
        bound += inst.n_dep[i] * max_dep;
        for (int j = 0; j < inst.num_flights; ++j)
            bound += inst.n_trans[i][j] * max_gate;
    }
    double lambda = 1.0 + static_cast<double>(bound);
    return {lambda, lambda};
}

inline QuboProblem build_qubo(const FlightGateInstance& inst, double lambda_one,
                              double lambda_not) {
    if (!(lambda_one > 0.0) || !(lambda_not > 0.0))
        throw std::invalid_argument("build_qubo: penalties must be positive");
    ForbiddenPairs fp = forbidden_pairs(inst);
    const int gates = inst.num_gates;
    const int n = inst.num_flights * gates;
    QuboProblem q;
    q.num_vars = n;
    q.constant = inst.num_flights * lambda_one;
    q.linear.assign(n, 0.0);
    q.quadratic.assign(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < inst.num_flights; ++i) {
        for (int a = 0; a < gates; ++a) {
            q.linear[i * gates + a] =
                static_cast<double>(inst.n_arr[i] * inst.t_arr[a] +
                                    inst.n_dep[i] * inst.t_dep[a]) -
                2.0 * lambda_one;
        }
    }
    for (int i = 0; i < inst.num_flights; ++i) {
        for (int j = 0; j < inst.num_flights; ++j) {
            bool forbidden = fp.contains(i, j);
            for (int a = 0; a < gates; ++a) {
                for (int b = 0; b < gates; ++b) {
                    double& cell = q.quadratic[i * gates + a][j * gates + b];
                    cell += static_cast<double>(inst.n_trans[i][j] *
                                                inst.t_gate[a][b]);
                    if (i == j) cell += lambda_one;
                    if (a == b && forbidden) cell += lambda_not;
                }
            }
        }
    }
    return q;
}

/// Evaluates the QUBO on a bit vector given as a basis index (bit p = x_p).
inline double qubo_value(const QuboProblem& q, std::uint64_t bits) {
    if (q.num_vars > 63)
        throw std::invalid_argument("qubo_value: too many variables for a mask");
    if (q.num_vars < 64 && (bits >> q.num_vars) != 0)
        throw std::invalid_argument("qubo_value: bit vector length mismatch");
    double value = q.constant;
    for (int p = 0; p < q.num_vars; ++p) {
        if (!((bits >> p) & 1)) continue;
        value += q.linear[p];
        for (int r = 0; r < q.num_vars; ++r) {
            if ((bits >> r) & 1) value += q.quadratic[p][r];
        }
    }
    return value;
}

/// Substitutes x_p = (1 - Z_p)/2 into the QUBO. Diagonal quadratic entries
/// reduce via Z^2 = I, so their Pauli weight lands on the constant and the
/// linear Z term; cross terms symmetrize pairwise.
inline PauliZPolynomial qubo_to_ising(const QuboProblem& q) {
    const int n = q.num_vars;
    double constant = q.constant;
    std::vector<double> h(n, 0.0);
    std::map<std::uint64_t, double> acc;
    for (int p = 0; p < n; ++p) {
        constant += 0.5 * q.linear[p];
        h[p] -= 0.5 * q.linear[p];
    }
    for (int p = 0; p < n; ++p) {
        for (int r = 0; r < n; ++r) {
            double j = q.quadratic[p][r];
            if (j == 0.0) continue;
            if (p == r) {
                // J_pp x_p^2 = J_pp x_p = J_pp (1 - Z_p) / 2
                constant += 0.5 * j;
                h[p] -= 0.5 * j;
            } else {
                constant += 0.25 * j;
                h[p] -= 0.25 * j;
                h[r] -= 0.25 * j;
                std::uint64_t mask = (1ULL << p) | (1ULL << r);
                acc[mask] += 0.25 * j;
            }
        }
    }
    for (int p = 0; p < n; ++p) acc[1ULL << p] += h[p];
    return detail::canonicalize(n, constant, acc);
}

/// Qubit layout of the binary encoding: flight i owns qubits
/// [i*M, i*M + M); qubit i*M + k carries bit z_k of the codeword alpha',
/// with k = 0 the most significant bit.
struct BinaryEncoding {
    int num_flights = 0;
    int num_gates = 0;
    int bits = 0;        // M = ceil(log2 |G|)
    int num_qubits = 0;  // |F| * M

    static BinaryEncoding for_instance(const FlightGateInstance& inst) {
        BinaryEncoding enc;
        enc.num_flights = inst.num_flights;
        enc.num_gates = inst.num_gates;
        enc.bits = bits_per_flight(inst.num_gates);
        enc.num_qubits = enc.num_flights * enc.bits;
        return enc;
    }
};

/// Cyclic codeword-to-gate map: alpha' mod |G|.
inline int cyclic_gate(int alpha_prime, int num_gates) {
    int m = bits_per_flight(num_gates);
    if (alpha_prime < 0 || alpha_prime >= (1 << m))
        throw std::out_of_range("cyclic_gate: codeword out of range");
    return alpha_prime % num_gates;
}

/// Decodes a basis index (bit p of `bits` = qubit p) to an assignment.
inline Assignment decode_bits(std::uint64_t bits, const BinaryEncoding& enc) {
    if (enc.num_qubits < 64 && (bits >> enc.num_qubits) != 0)
        throw std::invalid_argument("decode_bits: bit vector length mismatch");
    Assignment a;
    a.gate_of.resize(enc.num_flights);
    for (int i = 0; i < enc.num_flights; ++i) {
        int alpha_prime = 0;
        for (int k = 0; k < enc.bits; ++k) {
            int bit = static_cast<int>((bits >> (i * enc.bits + k)) & 1);
            alpha_prime |= bit << (enc.bits - 1 - k);
        }
        a.gate_of[i] = cyclic_gate(alpha_prime, enc.num_gates);
    }
    return a;
}

/// One-hot basis index of an assignment: bit i*|G| + gate set per flight.
inline std::uint64_t encode_onehot(const Assignment& a, int num_gates) {
    std::uint64_t z = 0;
    for (std::size_t i = 0; i < a.gate_of.size(); ++i)
        z |= 1ULL << (i * num_gates + a.gate_of[i]);
    return z;
}

namespace detail {

/// In-place Walsh transform: out[s] = sum_m in[m] * (-1)^popcount(s & m).
inline void walsh_transform(std::vector<double>& v) {
    for (std::size_t len = 1; len < v.size(); len <<= 1) {
        for (std::size_t i = 0; i < v.size(); i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                double a = v[j], b = v[j + len];
                v[j] = a + b;
                v[j + len] = a - b;
            }
        }
    }
}

/// Gate reached by each local qubit mask m of one flight. Bit k of m is the
/// value of qubit i*M + k, i.e. codeword bit z_k, so alpha' is m bit-reversed
/// within M bits.
inline std::vector<int> gate_by_local_mask(int num_gates) {
    int m = bits_per_flight(num_gates);
    std::vector<int> gate(std::size_t{1} << m);
    for (int mask = 0; mask < (1 << m); ++mask) {
        int alpha_prime = 0;
        for (int k = 0; k < m; ++k)
            alpha_prime |= ((mask >> k) & 1) << (m - 1 - k);
        gate[mask] = alpha_prime % num_gates;
    }
    return gate;
}

}  // namespace detail

/// Expands the projector form of the binary-encoded Hamiltonian into
/// Pauli-Z monomials via |z_k><z_k| = (I + (-1)^{z_k} Z)/2. Every term acts
/// on the qubits of at most two flights (<= 2M qubits).
inline PauliZPolynomial build_binary_hamiltonian(const FlightGateInstance& inst,
                                                 double lambda_not) {
    if (!(lambda_not > 0.0))
        throw std::invalid_argument(
            "build_binary_hamiltonian: penalty must be positive");
    BinaryEncoding enc = BinaryEncoding::for_instance(inst);
    if (enc.num_qubits > 63)
        throw std::invalid_argument(
            "build_binary_hamiltonian: too many qubits for a mask");
    ForbiddenPairs fp = forbidden_pairs(inst);
    const int m = enc.bits;
    const std::size_t codewords = std::size_t{1} << m;
    const std::vector<int> gate = detail::gate_by_local_mask(inst.num_gates);
    const double norm1 = std::ldexp(1.0, -m);       // 2^-M
    const double norm2 = std::ldexp(1.0, -2 * m);   // 2^-2M

    std::map<std::uint64_t, double> acc;
    double constant = 0.0;
    auto add_term = [&](std::uint64_t mask, double coeff) {
        if (coeff == 0.0) return;
        if (mask == 0)
            constant += coeff;
        else
            acc[mask] += coeff;
    };

    // Per-flight arrival/departure walk times.
    std::vector<double> values(codewords);
    for (int i = 0; i < inst.num_flights; ++i) {
        for (std::size_t w = 0; w < codewords; ++w) {
            int g = gate[w];
            values[w] = static_cast<double>(inst.n_arr[i] * inst.t_arr[g] +
                                            inst.n_dep[i] * inst.t_dep[g]);
        }
        detail::walsh_transform(values);
        for (std::size_t s = 0; s < codewords; ++s)
            add_term(s << (i * m), values[s] * norm1);
    }

    // Flight-pair transfer times plus the shared-gate penalty.
    std::vector<double> pair_values(codewords * codewords);
    for (int i = 0; i < inst.num_flights; ++i) {
        for (int j = i + 1; j < inst.num_flights; ++j) {
            long long transfer = inst.n_trans[i][j] + inst.n_trans[j][i];
            bool forbidden = fp.contains(i, j) || fp.contains(j, i);
            if (transfer == 0 && !forbidden) continue;
            for (std::size_t wi = 0; wi < codewords; ++wi) {
                for (std::size_t wj = 0; wj < codewords; ++wj) {
                    double v = static_cast<double>(
                        transfer * inst.t_gate[gate[wi]][gate[wj]]);
                    if (forbidden && gate[wi] == gate[wj]) v += lambda_not;
                    pair_values[wi * codewords + wj] = v;
                }
            }
            // Walsh transform along each index in turn.
            std::vector<double> col(codewords);
            for (std::size_t wj = 0; wj < codewords; ++wj) {
                for (std::size_t wi = 0; wi < codewords; ++wi)
                    col[wi] = pair_values[wi * codewords + wj];
                detail::walsh_transform(col);
                for (std::size_t si = 0; si < codewords; ++si)
                    pair_values[si * codewords + wj] = col[si];
            }
            for (std::size_t si = 0; si < codewords; ++si) {
                std::vector<double> row(
                    pair_values.begin() + si * codewords,
                    pair_values.begin() + (si + 1) * codewords);
                detail::walsh_transform(row);
                for (std::size_t sj = 0; sj < codewords; ++sj) {
                    std::uint64_t mask =
                        (static_cast<std::uint64_t>(si) << (i * m)) |
                        (static_cast<std::uint64_t>(sj) << (j * m));
                    add_term(mask, row[sj] * norm2);
                }
            }
        }
    }
    return detail::canonicalize(enc.num_qubits, constant, acc);
}

/// Dense table of diagonal energies, the exact cost oracle for the VQE.
struct EnergyTable {
    int num_qubits = 0;
    std::vector<double> energies;
};

constexpr int kEnergyTableMaxQubits = 24;

inline EnergyTable diagonal_energies(const PauliZPolynomial& poly,
                                     int max_qubits = kEnergyTableMaxQubits) {
    if (poly.num_qubits > max_qubits)
        throw std::runtime_error("diagonal_energies: qubit cap exceeded");
    EnergyTable table;
    table.num_qubits = poly.num_qubits;
    table.energies.assign(std::size_t{1} << poly.num_qubits, poly.constant);
    for (const auto& t : poly.terms) {
        for (std::uint64_t z = 0; z < table.energies.size(); ++z) {
            table.energies[z] +=
                (std::popcount(t.mask & z) & 1) ? -t.coeff : t.coeff;
        }
    }
    return table;
}

struct GroundStates {
    double energy = 0.0;
    std::vector<std::uint64_t> states;
};

/// All basis states within 1e-9 relative tolerance of the minimum energy.
/// Integer instance data makes ties exact in practice.
inline GroundStates ground_bitstrings(const EnergyTable& table) {
    if (table.energies.empty())
        throw std::invalid_argument("ground_bitstrings: empty table");
    double e_min = table.energies[0];
    for (double e : table.energies) e_min = std::min(e_min, e);
    double tol = 1e-9 * std::max(1.0, std::abs(e_min));
    GroundStates gs;
    gs.energy = e_min;
    for (std::uint64_t z = 0; z < table.energies.size(); ++z) {
        if (table.energies[z] <= e_min + tol) gs.states.push_back(z);
    }
    return gs;
}

}  // namespace fga
