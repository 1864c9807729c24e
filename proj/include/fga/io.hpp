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

#include <charconv>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fga/encoding.hpp"
#include "fga/instance.hpp"
#include "fga/simulator.hpp"
#include "fga/vqe.hpp"

namespace fga {

using json = nlohmann::json;

/// Shortest round-trip decimal text for a double; locale-free ('.' decimal
/// separator) and deterministic, used for every CSV cell.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{})
        throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

inline std::string to_string(EncodingScheme scheme) {
    return scheme == EncodingScheme::one_hot ? "onehot" : "binary";
}

inline EncodingScheme encoding_from_string(const std::string& s) {
    if (s == "onehot" || s == "one_hot") return EncodingScheme::one_hot;
    if (s == "binary") return EncodingScheme::binary;
    throw std::invalid_argument("unknown encoding: " + s);
}

inline std::string to_string(AnsatzFamily family) {
    return family == AnsatzFamily::entangling ? "entangling" : "product";
}

inline AnsatzFamily family_from_string(const std::string& s) {
    if (s == "entangling") return AnsatzFamily::entangling;
    if (s == "product") return AnsatzFamily::product;
    throw std::invalid_argument("unknown ansatz family: " + s);
}

inline std::string to_string(CostMode mode) {
    return mode == CostMode::exact ? "exact" : "sampled";
}

inline CostMode cost_mode_from_string(const std::string& s) {
    if (s == "exact") return CostMode::exact;
    if (s == "sampled") return CostMode::sampled;
    throw std::invalid_argument("unknown cost mode: " + s);
}

// Instance interchange schema: integer scalars and row-major nested arrays.
inline json instance_to_json(const FlightGateInstance& inst) {
    return json{{"num_flights", inst.num_flights},
                {"num_gates", inst.num_gates},
                {"n_arr", inst.n_arr},
                {"n_dep", inst.n_dep},
                {"n_trans", inst.n_trans},
                {"t_arr", inst.t_arr},
                {"t_dep", inst.t_dep},
                {"t_gate", inst.t_gate},
                {"t_in", inst.t_in},
                {"t_out", inst.t_out},
                {"t_buf", inst.t_buf}};
}

inline FlightGateInstance instance_from_json(const json& j) {
    FlightGateInstance inst;
    inst.num_flights = j.at("num_flights").get<int>();
    inst.num_gates = j.at("num_gates").get<int>();
    inst.n_arr = j.at("n_arr").get<std::vector<long long>>();
    inst.n_dep = j.at("n_dep").get<std::vector<long long>>();
    inst.n_trans = j.at("n_trans").get<std::vector<std::vector<long long>>>();
    inst.t_arr = j.at("t_arr").get<std::vector<long long>>();
    inst.t_dep = j.at("t_dep").get<std::vector<long long>>();
    inst.t_gate = j.at("t_gate").get<std::vector<std::vector<long long>>>();
    inst.t_in = j.at("t_in").get<std::vector<long long>>();
    inst.t_out = j.at("t_out").get<std::vector<long long>>();
    inst.t_buf = j.at("t_buf").get<long long>();
    inst.validate();
    return inst;
}

// Hamiltonian file schema: constant plus terms with explicit qubit lists.
inline json hamiltonian_to_json(const PauliZPolynomial& poly) {
    json terms = json::array();
    for (const auto& t : poly.terms) {
        std::vector<int> qubits;
        for (int p = 0; p < poly.num_qubits; ++p)
            if ((t.mask >> p) & 1) qubits.push_back(p);
        terms.push_back(json{{"coeff", t.coeff}, {"qubits", qubits}});
    }
    return json{{"num_qubits", poly.num_qubits},
                {"constant", poly.constant},
                {"terms", terms}};
}

inline PauliZPolynomial hamiltonian_from_json(const json& j) {
    PauliZPolynomial poly;
    poly.num_qubits = j.at("num_qubits").get<int>();
    poly.constant = j.at("constant").get<double>();
    for (const auto& term : j.at("terms")) {
        std::uint64_t mask = 0;
        for (int p : term.at("qubits").get<std::vector<int>>()) {
            if (p < 0 || p >= poly.num_qubits)
                throw std::invalid_argument("hamiltonian: qubit index out of range");
            mask |= 1ULL << p;
        }
        poly.terms.push_back({term.at("coeff").get<double>(), mask});
    }
    return poly;
}

inline json generation_config_to_json(const GenerationConfig& g) {
    return json{{"num_flights", g.num_flights},
                {"num_gates", g.num_gates},
                {"max_passengers", g.max_passengers},
                {"time_horizon", g.time_horizon},
                {"min_duration", g.min_duration},
                {"max_duration", g.max_duration},
                {"t_buf", g.t_buf},
                {"difficulty_pool_factor", g.difficulty_pool_factor}};
}

inline GenerationConfig generation_config_from_json(const json& j) {
    GenerationConfig g;
    g.num_flights = j.value("num_flights", g.num_flights);
    g.num_gates = j.value("num_gates", g.num_gates);
    g.max_passengers = j.value("max_passengers", g.max_passengers);
    g.time_horizon = j.value("time_horizon", g.time_horizon);
    g.min_duration = j.value("min_duration", g.min_duration);
    g.max_duration = j.value("max_duration", g.max_duration);
    g.t_buf = j.value("t_buf", g.t_buf);
    g.difficulty_pool_factor =
        j.value("difficulty_pool_factor", g.difficulty_pool_factor);
    return g;
}

inline json run_trace_summary_json(const RunTrace& trace) {
    json crossings = json::object();
    for (const auto& c : trace.crossings) {
        crossings[format_double(c.threshold)] =
            c.first_eval ? json(*c.first_eval) : json(nullptr);
    }
    return json{{"best_cost", trace.best_cost},
                {"final_fidelity", trace.final_fidelity},
                {"max_fidelity", trace.max_fidelity},
                {"evals_used", trace.evals_used},
                {"first_crossing", crossings}};
}

inline void write_trace_csv(const RunTrace& trace, std::ostream& out) {
    out << "eval,cost,fidelity\n";
    for (std::size_t i = 0; i < trace.history.size(); ++i) {
        out << (i + 1) << ',' << format_double(trace.history[i].cost) << ','
            << format_double(trace.history[i].fidelity) << '\n';
    }
}

/// Amplitude dump for debugging; refuses to write huge states.
inline json state_to_json(const StateVector& state) {
    if (state.num_qubits > 12)
        throw std::runtime_error("state_to_json: more than 12 qubits");
    json amps = json::array();
    for (const auto& a : state.amplitudes)
        amps.push_back(json{{"re", a.real()}, {"im", a.imag()}});
    return json{{"num_qubits", state.num_qubits}, {"amplitudes", amps}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace fga
