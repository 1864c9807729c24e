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

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fga/harness.hpp"
#include "fga/io.hpp"

namespace {

using fga::json;

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        fga::write_text_file(out_path, text);
    }
}

struct GenArgs {
    fga::GenerationConfig config;
    std::uint64_t seed = 1;
    int count = 1;
    std::string out;
};

int run_gen(const GenArgs& a) {
    int pool_n = static_cast<int>(
        std::ceil(a.count * a.config.difficulty_pool_factor));
    std::vector<fga::FlightGateInstance> pool;
    for (int k = 0; k < pool_n; ++k) {
        std::uint64_t seed = fga::SeedFold(a.seed).add("inst").add(
            static_cast<std::uint64_t>(k)).seed();
        pool.push_back(fga::generate_instance(a.config, seed));
    }
    if (a.config.difficulty_pool_factor > 1.0)
        pool = fga::difficulty_filter(pool, a.count);
    else
        pool.resize(a.count);
    if (a.count == 1) {
        emit(fga::instance_to_json(pool[0]), a.out);
    } else {
        json arr = json::array();
        for (const auto& inst : pool) arr.push_back(fga::instance_to_json(inst));
        emit(arr, a.out);
    }
    return 0;
}

int run_exact(const std::string& in_path, const std::string& out) {
    auto inst = fga::instance_from_json(fga::load_json_file(in_path));
    fga::ExactSolution sol = fga::solve_exact(inst);
    json optima = json::array();
    for (const auto& a : sol.optima) optima.push_back(a.gate_of);
    emit(json{{"optimal_time", sol.optimal_time}, {"optima", optima}}, out);
    return 0;
}

struct EncodeArgs {
    std::string in_path;
    std::string encoding = "binary";
    double lambda_one = 0.0;  // 0: use the default penalties
    double lambda_not = 0.0;
    std::string out;
};

int run_encode(const EncodeArgs& a) {
    auto inst = fga::instance_from_json(fga::load_json_file(a.in_path));
    auto [def_one, def_not] = fga::default_penalties(inst);
    double lambda_one = a.lambda_one > 0.0 ? a.lambda_one : def_one;
    double lambda_not = a.lambda_not > 0.0 ? a.lambda_not : def_not;
    fga::PauliZPolynomial poly;
    if (fga::encoding_from_string(a.encoding) == fga::EncodingScheme::one_hot) {
        poly = fga::qubo_to_ising(fga::build_qubo(inst, lambda_one, lambda_not));
    } else {
        poly = fga::build_binary_hamiltonian(inst, lambda_not);
    }
    emit(fga::hamiltonian_to_json(poly), a.out);
    return 0;
}

struct VqeArgs {
    std::string in_path;
    std::string encoding = "binary";
    double xi = 0.1;
    int layers = 3;
    std::string family = "entangling";
    std::uint64_t seed = 1;
    int max_evals = 0;
    std::string mode = "exact";
    int shots = 1024;
    std::string trace_out;
    std::string dump_state;
    std::string out;
};

int run_vqe_cmd(const VqeArgs& a) {
    auto inst = fga::instance_from_json(fga::load_json_file(a.in_path));
    auto scheme = fga::encoding_from_string(a.encoding);
    auto enc = fga::detail::encode_instance(inst, scheme);

    fga::AnsatzSpec spec{enc.n_qubits, a.layers,
                         fga::family_from_string(a.family)};
    fga::CostSpec cost{a.xi, fga::cost_mode_from_string(a.mode), a.shots};
    fga::OptimizerConfig opt;
    opt.max_evals = a.max_evals;
    fga::RunTrace trace =
        fga::run_vqe(enc.table, enc.ground, spec, cost, opt, a.seed);

    if (!a.trace_out.empty()) {
        std::ofstream f(a.trace_out);
        if (!f) throw std::runtime_error("cannot write " + a.trace_out);
        fga::write_trace_csv(trace, f);
    }
    if (!a.dump_state.empty()) {
        fga::StateVector state = fga::prepare_state(spec, trace.theta_best);
        fga::write_text_file(a.dump_state,
                             fga::state_to_json(state).dump(2) + "\n");
    }
    json summary = fga::run_trace_summary_json(trace);
    summary["n_qubits"] = enc.n_qubits;
    summary["encoding"] = fga::to_string(scheme);
    summary["ground_degeneracy"] = enc.ground.size();
    emit(summary, a.out);
    return 0;
}

int run_sweep_cmd(const std::string& config_path, const std::string& out_dir,
                  int threads) {
    fga::SweepConfig config =
        fga::sweep_config_from_json(fga::load_json_file(config_path));
    fga::SweepOptions options;
    options.out_dir = out_dir;
    options.threads = threads;
    auto records = fga::run_sweep(config, options);
    fga::export_report(records, config, out_dir);
    std::cout << "{\"records\": " << records.size() << ", \"out_dir\": \""
              << out_dir << "\"}\n";
    return 0;
}

int run_report(const std::string& records_dir) {
    auto dir = std::filesystem::path(records_dir);
    fga::SweepConfig config =
        fga::sweep_config_from_json(fga::load_json_file((dir / "config.json").string()));
    std::vector<fga::RunRecord> records;
    std::ifstream in(dir / "records.jsonl");
    if (!in) throw std::runtime_error("cannot open records.jsonl in " + records_dir);
    std::string line;
    std::map<std::string, fga::RunRecord> by_key;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        fga::RunRecord r = fga::record_from_json(json::parse(line));
        by_key[r.key()] = std::move(r);
    }
    records.reserve(by_key.size());
    for (auto& [key, r] : by_key) records.push_back(std::move(r));
    fga::export_report(records, config, dir);
    std::cout << "{\"records\": " << records.size() << "}\n";
    return 0;
}

int run_preset(const std::string& name, int max_qubits, const std::string& out) {
    fga::SweepConfig config;
    if (name == "main")
        config = fga::preset_main_study(max_qubits);
    else if (name == "onehot")
        config = fga::preset_onehot_variants(max_qubits);
    else if (name == "g4")
        config = fga::preset_g4_scaling(max_qubits);
    else
        throw std::invalid_argument("unknown preset: " + name);
    emit(fga::sweep_config_to_json(config), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Flight-gate assignment encodings and CVaR-VQE simulation"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* cmd_gen = app.add_subcommand("gen", "Generate random instances");
    cmd_gen->add_option("--flights", gen.config.num_flights, "Number of flights");
    cmd_gen->add_option("--gates", gen.config.num_gates, "Number of gates");
    cmd_gen->add_option("--max-passengers", gen.config.max_passengers);
    cmd_gen->add_option("--horizon", gen.config.time_horizon);
    cmd_gen->add_option("--min-duration", gen.config.min_duration);
    cmd_gen->add_option("--max-duration", gen.config.max_duration);
    cmd_gen->add_option("--buffer", gen.config.t_buf);
    cmd_gen->add_option("--pool-factor", gen.config.difficulty_pool_factor,
                        "Generate count*factor instances, keep the hardest");
    cmd_gen->add_option("--seed", gen.seed);
    cmd_gen->add_option("--count", gen.count);
    cmd_gen->add_option("-o,--out", gen.out, "Output file (default stdout)");

    std::string exact_in, exact_out;
    auto* cmd_exact = app.add_subcommand("exact", "Brute-force optimum");
    cmd_exact->add_option("-i,--in", exact_in, "Instance JSON")->required();
    cmd_exact->add_option("-o,--out", exact_out);

    EncodeArgs enc;
    auto* cmd_encode =
        app.add_subcommand("encode", "Emit the Hamiltonian as JSON");
    cmd_encode->add_option("-i,--in", enc.in_path, "Instance JSON")->required();
    cmd_encode->add_option("--encoding", enc.encoding, "onehot|binary");
    cmd_encode->add_option("--lambda-one", enc.lambda_one);
    cmd_encode->add_option("--lambda-not", enc.lambda_not);
    cmd_encode->add_option("-o,--out", enc.out);

    VqeArgs vqe;
    auto* cmd_vqe = app.add_subcommand("vqe", "Single CVaR-VQE run");
    cmd_vqe->add_option("-i,--in", vqe.in_path, "Instance JSON")->required();
    cmd_vqe->add_option("--encoding", vqe.encoding, "onehot|binary");
    cmd_vqe->add_option("--xi", vqe.xi, "CVaR tail fraction in (0,1]");
    cmd_vqe->add_option("--layers", vqe.layers);
    cmd_vqe->add_option("--family", vqe.family, "entangling|product");
    cmd_vqe->add_option("--seed", vqe.seed);
    cmd_vqe->add_option("--max-evals", vqe.max_evals,
                        "0 means 50 * qubit count");
    cmd_vqe->add_option("--mode", vqe.mode, "exact|sampled");
    cmd_vqe->add_option("--shots", vqe.shots);
    cmd_vqe->add_option("--trace-out", vqe.trace_out,
                        "CSV of eval,cost,fidelity");
    cmd_vqe->add_option("--dump-state", vqe.dump_state,
                        "Amplitude JSON of the best state (<= 12 qubits)");
    cmd_vqe->add_option("-o,--out", vqe.out);

    std::string sweep_config, sweep_out = "sweep-out";
    int sweep_threads = 0;
    auto* cmd_sweep = app.add_subcommand("sweep", "Run an experiment sweep");
    cmd_sweep->add_option("config", sweep_config, "Sweep config JSON")
        ->required();
    cmd_sweep->add_option("-o,--out", sweep_out, "Output directory");
    cmd_sweep->add_option("--threads", sweep_threads, "0 = all cores");

    std::string report_dir;
    auto* cmd_report =
        app.add_subcommand("report", "Re-export CSV reports from records");
    cmd_report->add_option("records_dir", report_dir)->required();

    std::string preset_name, preset_out;
    int preset_max_qubits = 18;
    auto* cmd_preset =
        app.add_subcommand("preset", "Emit a canned sweep config");
    cmd_preset->add_option("name", preset_name, "main|onehot|g4")->required();
    cmd_preset->add_option("--max-qubits", preset_max_qubits);
    cmd_preset->add_option("-o,--out", preset_out);

    try {
        app.parse(argc, argv);
        if (*cmd_gen) return run_gen(gen);
        if (*cmd_exact) return run_exact(exact_in, exact_out);
        if (*cmd_encode) return run_encode(enc);
        if (*cmd_vqe) return run_vqe_cmd(vqe);
        if (*cmd_sweep) return run_sweep_cmd(sweep_config, sweep_out, sweep_threads);
        if (*cmd_report) return run_report(report_dir);
        if (*cmd_preset)
            return run_preset(preset_name, preset_max_qubits, preset_out);
        return 1;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return e.get_exit_code() == 0 ? 1 : e.get_exit_code();
    } catch (const std::exception& e) {
        std::cerr << json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
}
