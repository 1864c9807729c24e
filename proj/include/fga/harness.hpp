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

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "fga/io.hpp"
#include "fga/vqe.hpp"

namespace fga {

struct SweepConfig {
    std::vector<std::pair<int, int>> sizes;  // (|F|, |G|) pairs
    int instances_per_size = 50;
    int restarts_per_instance = 5;
    std::vector<double> xis = {0.01, 0.1, 0.25, 1.0};
    std::vector<int> layer_counts = {1, 2, 3};
    std::vector<AnsatzFamily> families = {AnsatzFamily::entangling};
    std::vector<EncodingScheme> encodings = {EncodingScheme::binary};
    GenerationConfig generation;
    std::uint64_t base_seed = 1;
    std::vector<double> thresholds = {0.01, 0.10};
    CostSpec cost;                 // xi is overridden per run
    OptimizerConfig optimizer;     // max_evals 0 -> 50 * qubits
    int max_qubits = 18;           // (size, encoding) combos above this are skipped

    void validate() const {
        if (sizes.empty() || xis.empty() || layer_counts.empty() ||
            families.empty() || encodings.empty() || thresholds.empty())
            throw std::invalid_argument("sweep: empty parameter list");
        if (instances_per_size < 1 || restarts_per_instance < 1)
            throw std::invalid_argument("sweep: counts must be positive");
        for (double xi : xis) check_xi(xi);
        for (int l : layer_counts)
            if (l < 1) throw std::invalid_argument("sweep: layers must be >= 1");
        for (auto [f, g] : sizes)
            if (f < 1 || g < 1)
                throw std::invalid_argument("sweep: invalid size pair");
        if (max_qubits < 1 || max_qubits > kSimulatorMaxQubits)
            throw std::invalid_argument("sweep: max_qubits out of range");
    }
};

inline int qubits_for(int num_flights, int num_gates, EncodingScheme scheme) {
    return scheme == EncodingScheme::one_hot
               ? num_flights * num_gates
               : num_flights * bits_per_flight(num_gates);
}

struct RunRecord {
    std::string instance_id;  // e.g. "F4G3-i07"
    int num_flights = 0;
    int num_gates = 0;
    int instance_index = 0;
    EncodingScheme encoding = EncodingScheme::binary;
    AnsatzFamily family = AnsatzFamily::entangling;
    int layers = 1;
    double xi = 0.1;
    int restart = 0;
    int n_qubits = 0;
    std::uint64_t run_seed = 0;
    int evals_used = 0;
    std::vector<ThresholdCrossing> crossings;
    double final_fidelity = 0.0;
    double max_fidelity = 0.0;
    double best_cost = 0.0;
    double optimal_time = 0.0;
    int ground_degeneracy = 0;
    std::string error;  // empty on success

    std::string key() const {
        std::ostringstream os;
        os << instance_id << '|' << fga::to_string(encoding) << '|'
           << fga::to_string(family) << "|l" << layers << "|xi"
           << format_double(xi) << "|r" << restart;
        return os.str();
    }

    std::optional<int> crossing_for(double threshold) const {
        for (const auto& c : crossings)
            if (c.threshold == threshold) return c.first_eval;
        return std::nullopt;
    }
};

inline json record_to_json(const RunRecord& r) {
    json crossings = json::array();
    for (const auto& c : r.crossings) {
        crossings.push_back(json{
            {"threshold", c.threshold},
            {"first_eval", c.first_eval ? json(*c.first_eval) : json(nullptr)}});
    }
    return json{{"instance_id", r.instance_id},
                {"num_flights", r.num_flights},
                {"num_gates", r.num_gates},
                {"instance_index", r.instance_index},
                {"encoding", to_string(r.encoding)},
                {"family", to_string(r.family)},
                {"layers", r.layers},
                {"xi", r.xi},
                {"restart", r.restart},
                {"n_qubits", r.n_qubits},
                {"run_seed", r.run_seed},
                {"evals_used", r.evals_used},
                {"crossings", crossings},
                {"final_fidelity", r.final_fidelity},
                {"max_fidelity", r.max_fidelity},
                {"best_cost", r.best_cost},
                {"optimal_time", r.optimal_time},
                {"ground_degeneracy", r.ground_degeneracy},
                {"error", r.error}};
}

inline RunRecord record_from_json(const json& j) {
    RunRecord r;
    r.instance_id = j.at("instance_id").get<std::string>();
    r.num_flights = j.at("num_flights").get<int>();
    r.num_gates = j.at("num_gates").get<int>();
    r.instance_index = j.at("instance_index").get<int>();
    r.encoding = encoding_from_string(j.at("encoding").get<std::string>());
    r.family = family_from_string(j.at("family").get<std::string>());
    r.layers = j.at("layers").get<int>();
    r.xi = j.at("xi").get<double>();
    r.restart = j.at("restart").get<int>();
    r.n_qubits = j.at("n_qubits").get<int>();
    r.run_seed = j.at("run_seed").get<std::uint64_t>();
    r.evals_used = j.at("evals_used").get<int>();
    for (const auto& c : j.at("crossings")) {
        ThresholdCrossing tc;
        tc.threshold = c.at("threshold").get<double>();
        if (!c.at("first_eval").is_null())
            tc.first_eval = c.at("first_eval").get<int>();
        r.crossings.push_back(tc);
    }
    r.final_fidelity = j.at("final_fidelity").get<double>();
    r.max_fidelity = j.at("max_fidelity").get<double>();
    r.best_cost = j.at("best_cost").get<double>();
    r.optimal_time = j.at("optimal_time").get<double>();
    r.ground_degeneracy = j.at("ground_degeneracy").get<int>();
    r.error = j.at("error").get<std::string>();
    return r;
}

inline json sweep_config_to_json(const SweepConfig& c) {
    json sizes = json::array();
    for (auto [f, g] : c.sizes) sizes.push_back(json::array({f, g}));
    json families = json::array();
    for (auto f : c.families) families.push_back(to_string(f));
    json encodings = json::array();
    for (auto e : c.encodings) encodings.push_back(to_string(e));
    return json{{"sizes", sizes},
                {"instances_per_size", c.instances_per_size},
                {"restarts_per_instance", c.restarts_per_instance},
                {"xis", c.xis},
                {"layer_counts", c.layer_counts},
                {"families", families},
                {"encodings", encodings},
                {"generation", generation_config_to_json(c.generation)},
                {"base_seed", c.base_seed},
                {"thresholds", c.thresholds},
                {"cost_mode", to_string(c.cost.mode)},
                {"shots", c.cost.shots},
                {"max_evals", c.optimizer.max_evals},
                {"rho_begin", c.optimizer.rho_begin},
                {"rho_end", c.optimizer.rho_end},
                {"max_qubits", c.max_qubits}};
}

inline SweepConfig sweep_config_from_json(const json& j) {
    SweepConfig c;
    c.sizes.clear();
    for (const auto& s : j.at("sizes"))
        c.sizes.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
    c.instances_per_size = j.value("instances_per_size", c.instances_per_size);
    c.restarts_per_instance =
        j.value("restarts_per_instance", c.restarts_per_instance);
    if (j.contains("xis")) c.xis = j.at("xis").get<std::vector<double>>();
    if (j.contains("layer_counts"))
        c.layer_counts = j.at("layer_counts").get<std::vector<int>>();
    if (j.contains("families")) {
        c.families.clear();
        for (const auto& f : j.at("families"))
            c.families.push_back(family_from_string(f.get<std::string>()));
    }
    if (j.contains("encodings")) {
        c.encodings.clear();
        for (const auto& e : j.at("encodings"))
            c.encodings.push_back(encoding_from_string(e.get<std::string>()));
    }
    if (j.contains("generation"))
        c.generation = generation_config_from_json(j.at("generation"));
    c.base_seed = j.value("base_seed", c.base_seed);
    if (j.contains("thresholds"))
        c.thresholds = j.at("thresholds").get<std::vector<double>>();
    if (j.contains("cost_mode"))
        c.cost.mode = cost_mode_from_string(j.at("cost_mode").get<std::string>());
    c.cost.shots = j.value("shots", c.cost.shots);
    c.optimizer.max_evals = j.value("max_evals", c.optimizer.max_evals);
    c.optimizer.rho_begin = j.value("rho_begin", c.optimizer.rho_begin);
    c.optimizer.rho_end = j.value("rho_end", c.optimizer.rho_end);
    c.max_qubits = j.value("max_qubits", c.max_qubits);
    return c;
}

namespace detail {

inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t)>& body) {
    if (threads <= 0)
        threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                body(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

struct EncodedInstance {
    EnergyTable table;
    std::vector<std::uint64_t> ground;
    int n_qubits = 0;
};

inline EncodedInstance encode_instance(const FlightGateInstance& inst,
                                       EncodingScheme scheme) {
    auto [lambda_one, lambda_not] = default_penalties(inst);
    PauliZPolynomial poly;
    if (scheme == EncodingScheme::one_hot) {
        poly = qubo_to_ising(build_qubo(inst, lambda_one, lambda_not));
    } else {
        poly = build_binary_hamiltonian(inst, lambda_not);
    }
    EncodedInstance enc;
    enc.table = diagonal_energies(poly);
    enc.ground = ground_bitstrings(enc.table).states;
    enc.n_qubits = poly.num_qubits;
    return enc;
}

}  // namespace detail

/// Per-run seeds are derived from the base seed and the full job identity
/// (instance id, encoding, family, layers, xi, restart) via the SeedFold
/// rule, so results do not depend on the worker schedule.
inline std::uint64_t derive_run_seed(std::uint64_t base_seed,
                                     const std::string& instance_id,
                                     EncodingScheme encoding,
                                     AnsatzFamily family, int layers, double xi,
                                     int restart) {
    std::uint64_t xi_bits;
    __builtin_memcpy(&xi_bits, &xi, sizeof(xi_bits));
    return SeedFold(base_seed)
        .add("run")
        .add(instance_id)
        .add(to_string(encoding))
        .add(to_string(family))
        .add(static_cast<std::uint64_t>(layers))
        .add(xi_bits)
        .add(static_cast<std::uint64_t>(restart))
        .seed();
}

/// Deterministic per-size instance set: a pool of
/// ceil(instances_per_size * pool_factor) generated instances, reduced by the
/// difficulty filter when the factor exceeds 1.
inline std::vector<FlightGateInstance> sweep_instances(const SweepConfig& config,
                                                       int num_flights,
                                                       int num_gates) {
    GenerationConfig gen = config.generation;
    gen.num_flights = num_flights;
    gen.num_gates = num_gates;
    gen.validate();
    int pool_n = static_cast<int>(std::ceil(config.instances_per_size *
                                            gen.difficulty_pool_factor));
    std::vector<FlightGateInstance> pool;
    pool.reserve(pool_n);
    for (int k = 0; k < pool_n; ++k) {
        std::uint64_t seed = SeedFold(config.base_seed)
                                 .add("inst")
                                 .add(static_cast<std::uint64_t>(num_flights))
                                 .add(static_cast<std::uint64_t>(num_gates))
                                 .add(static_cast<std::uint64_t>(k))
                                 .seed();
        pool.push_back(generate_instance(gen, seed));
    }
    if (gen.difficulty_pool_factor > 1.0)
        return difficulty_filter(pool, config.instances_per_size);
    pool.resize(config.instances_per_size);
    return pool;
}

struct SweepOptions {
    std::filesystem::path out_dir;  // empty: no persistence
    int threads = 0;                // 0: hardware concurrency
};

inline std::vector<RunRecord> run_sweep(const SweepConfig& config,
                                        const SweepOptions& options = {}) {
    config.validate();

    std::unordered_map<std::string, RunRecord> done;
    std::ofstream journal;
    std::mutex journal_mutex;
    if (!options.out_dir.empty()) {
        std::filesystem::create_directories(options.out_dir);
        auto records_path = options.out_dir / "records.jsonl";
        std::ifstream in(records_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                RunRecord r = record_from_json(json::parse(line));
                done.emplace(r.key(), std::move(r));
            } catch (const std::exception&) {
                break;  // partial trailing line from an interrupted run
            }
        }
        in.close();
        write_text_file((options.out_dir / "config.json").string(),
                        sweep_config_to_json(config).dump(2) + "\n");
        journal.open(records_path, std::ios::app);
    }

    struct Job {
        int size_index;
        int instance_index;
        EncodingScheme encoding;
        AnsatzFamily family;
        int layers;
        double xi;
        int restart;
    };

    std::vector<RunRecord> records;
    for (int size_index = 0; size_index < static_cast<int>(config.sizes.size());
         ++size_index) {
        auto [num_flights, num_gates] = config.sizes[size_index];

        std::vector<Job> jobs;
        for (EncodingScheme enc : config.encodings) {
            int n = qubits_for(num_flights, num_gates, enc);
            if (n > config.max_qubits || n > kEnergyTableMaxQubits) continue;
            for (int inst = 0; inst < config.instances_per_size; ++inst)
                for (AnsatzFamily fam : config.families)
                    for (int layers : config.layer_counts)
                        for (double xi : config.xis)
                            for (int r = 0; r < config.restarts_per_instance; ++r)
                                jobs.push_back({size_index, inst, enc, fam,
                                                layers, xi, r});
        }
        if (jobs.empty()) continue;

        auto instance_id = [&](int idx) {
            std::ostringstream os;
            os << 'F' << num_flights << 'G' << num_gates << "-i" << idx;
            return os.str();
        };
        auto job_key = [&](const Job& job) {
            RunRecord stub;
            stub.instance_id = instance_id(job.instance_index);
            stub.encoding = job.encoding;
            stub.family = job.family;
            stub.layers = job.layers;
            stub.xi = job.xi;
            stub.restart = job.restart;
            return stub.key();
        };

        bool all_done = true;
        for (const auto& job : jobs) {
            if (!done.count(job_key(job))) {
                all_done = false;
                break;
            }
        }

        // Instance and table preparation is skipped when every run of this
        // size was already journalled.
        std::vector<FlightGateInstance> instances;
        std::vector<double> optimal_times(config.instances_per_size, 0.0);
        std::map<EncodingScheme, std::vector<detail::EncodedInstance>> encoded;
        std::string preparation_error;
        if (!all_done) {
            try {
                instances = sweep_instances(config, num_flights, num_gates);
                for (int i = 0; i < config.instances_per_size; ++i)
                    optimal_times[i] = solve_exact(instances[i]).optimal_time;
                for (EncodingScheme enc : config.encodings) {
                    int n = qubits_for(num_flights, num_gates, enc);
                    if (n > config.max_qubits || n > kEnergyTableMaxQubits)
                        continue;
                    auto& list = encoded[enc];
                    list.resize(config.instances_per_size);
                    detail::parallel_for(
                        config.instances_per_size, options.threads,
                        [&](std::size_t i) {
                            list[i] = detail::encode_instance(instances[i], enc);
                        });
                }
            } catch (const std::exception& e) {
                preparation_error = e.what();
            }
        }

        std::vector<RunRecord> size_records(jobs.size());
        detail::parallel_for(jobs.size(), options.threads, [&](std::size_t ji) {
            const Job& job = jobs[ji];
            RunRecord rec;
            rec.instance_id = instance_id(job.instance_index);
            rec.num_flights = num_flights;
            rec.num_gates = num_gates;
            rec.instance_index = job.instance_index;
            rec.encoding = job.encoding;
            rec.family = job.family;
            rec.layers = job.layers;
            rec.xi = job.xi;
            rec.restart = job.restart;
            rec.n_qubits = qubits_for(num_flights, num_gates, job.encoding);
            rec.run_seed =
                derive_run_seed(config.base_seed, rec.instance_id, job.encoding,
                                job.family, job.layers, job.xi, job.restart);

            auto it = done.find(rec.key());
            if (it != done.end()) {
                size_records[ji] = it->second;
                return;
            }
            if (!preparation_error.empty()) {
                rec.error = preparation_error;
                size_records[ji] = rec;
                return;
            }
            try {
                const auto& enc = encoded.at(job.encoding)[job.instance_index];
                AnsatzSpec spec{enc.n_qubits, job.layers, job.family};
                CostSpec cost = config.cost;
                cost.xi = job.xi;
                RunTrace trace =
                    run_vqe(enc.table, enc.ground, spec, cost, config.optimizer,
                            rec.run_seed, config.thresholds);
                rec.evals_used = trace.evals_used;
                rec.crossings = trace.crossings;
                rec.final_fidelity = trace.final_fidelity;
                rec.max_fidelity = trace.max_fidelity;
                rec.best_cost = trace.best_cost;
                rec.optimal_time = optimal_times[job.instance_index];
                rec.ground_degeneracy = static_cast<int>(enc.ground.size());
            } catch (const std::exception& e) {
                rec.error = e.what();
            }
            size_records[ji] = rec;
            if (journal.is_open()) {
                std::string line = record_to_json(rec).dump();
                std::lock_guard<std::mutex> lock(journal_mutex);
                journal << line << '\n' << std::flush;
            }
        });
        for (auto& rec : size_records) records.push_back(std::move(rec));
    }
    return records;
}

/// Fraction of runs whose first crossing of `threshold` happened within
/// g * n_qubits cost evaluations, for each g in `grid`. Runs that never
/// crossed (or errored) count in the denominator.
inline std::vector<double> fraction_reaching(const std::vector<RunRecord>& records,
                                             double threshold,
                                             const std::vector<double>& grid) {
    if (records.empty())
        throw std::invalid_argument("fraction_reaching: empty record group");
    std::vector<double> curve;
    curve.reserve(grid.size());
    for (double g : grid) {
        int hits = 0;
        for (const auto& r : records) {
            auto cross = r.crossing_for(threshold);
            if (cross && static_cast<double>(*cross) <= g * r.n_qubits) ++hits;
        }
        curve.push_back(static_cast<double>(hits) /
                        static_cast<double>(records.size()));
    }
    return curve;
}

struct ScalingRow {
    EncodingScheme encoding;
    AnsatzFamily family;
    int layers;
    double xi;
    int n_qubits;
    double threshold;
    std::optional<double> nbar;  // absent when no run in the group succeeded
    int successes = 0;
    int runs = 0;
};

/// Mean evaluations-to-first-crossing over successful runs, grouped by qubit
/// count (and ansatz/cost parameters).
inline std::vector<ScalingRow> average_evals_to_threshold(
    const std::vector<RunRecord>& records, double threshold) {
    std::map<std::tuple<int, int, int, double, int>, ScalingRow> groups;
    for (const auto& r : records) {
        auto key = std::make_tuple(static_cast<int>(r.encoding),
                                   static_cast<int>(r.family), r.layers, r.xi,
                                   r.n_qubits);
        auto& row = groups[key];
        if (row.runs == 0) {
            row.encoding = r.encoding;
            row.family = r.family;
            row.layers = r.layers;
            row.xi = r.xi;
            row.n_qubits = r.n_qubits;
            row.threshold = threshold;
        }
        row.runs++;
        if (auto cross = r.crossing_for(threshold)) {
            row.successes++;
            row.nbar = row.nbar.value_or(0.0) + static_cast<double>(*cross);
        }
    }
    std::vector<ScalingRow> rows;
    for (auto& [key, row] : groups) {
        if (row.successes > 0) row.nbar = *row.nbar / row.successes;
        rows.push_back(row);
    }
    return rows;
}

struct SummaryRow {
    int num_flights = 0;
    int num_gates = 0;
    int n_qubits = 0;
    EncodingScheme encoding;
    AnsatzFamily family;
    int layers = 0;
    double xi = 0.0;
    int runs = 0;
    struct PerThreshold {
        double threshold = 0.0;
        double fraction = 0.0;
        int successes = 0;
        std::optional<double> nbar;
    };
    std::vector<PerThreshold> per_threshold;
};

inline std::vector<SummaryRow> summarize(const std::vector<RunRecord>& records,
                                         const std::vector<double>& thresholds) {
    std::map<std::tuple<int, int, int, int, int, double>, SummaryRow> groups;
    for (const auto& r : records) {
        auto key = std::make_tuple(r.num_flights, r.num_gates,
                                   static_cast<int>(r.encoding),
                                   static_cast<int>(r.family), r.layers, r.xi);
        auto& row = groups[key];
        if (row.runs == 0) {
            row.num_flights = r.num_flights;
            row.num_gates = r.num_gates;
            row.n_qubits = r.n_qubits;
            row.encoding = r.encoding;
            row.family = r.family;
            row.layers = r.layers;
            row.xi = r.xi;
            row.per_threshold.resize(thresholds.size());
            for (std::size_t t = 0; t < thresholds.size(); ++t)
                row.per_threshold[t].threshold = thresholds[t];
        }
        row.runs++;
        for (auto& pt : row.per_threshold) {
            if (auto cross = r.crossing_for(pt.threshold)) {
                pt.successes++;
                pt.nbar = pt.nbar.value_or(0.0) + static_cast<double>(*cross);
            }
        }
    }
    std::vector<SummaryRow> rows;
    for (auto& [key, row] : groups) {
        for (auto& pt : row.per_threshold) {
            pt.fraction = static_cast<double>(pt.successes) / row.runs;
            if (pt.successes > 0) pt.nbar = *pt.nbar / pt.successes;
        }
        rows.push_back(row);
    }
    return rows;
}

inline std::uint64_t config_hash(const SweepConfig& config) {
    SeedFold fold(0);
    fold.add(sweep_config_to_json(config).dump());
    return fold.seed();
}

/// Writes runs.csv, summary.csv, scaling.csv, curves/*.csv and manifest.json.
/// Deterministic: rerunning a sweep from the same config yields byte-identical
/// files. Re-export over existing files is idempotent.
inline void export_report(const std::vector<RunRecord>& records,
                          const SweepConfig& config,
                          const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto& thresholds = config.thresholds;

    {
        std::ostringstream csv;
        csv << "instance_id,num_flights,num_gates,encoding,family,layers,xi,"
               "restart,n_qubits,run_seed,evals_used";
        for (double t : thresholds) csv << ",first_cross_" << format_double(t);
        csv << ",final_fidelity,max_fidelity,best_cost,optimal_time,"
               "ground_degeneracy,error\n";
        for (const auto& r : records) {
            csv << r.instance_id << ',' << r.num_flights << ',' << r.num_gates
                << ',' << to_string(r.encoding) << ',' << to_string(r.family)
                << ',' << r.layers << ',' << format_double(r.xi) << ','
                << r.restart << ',' << r.n_qubits << ',' << r.run_seed << ','
                << r.evals_used;
            for (double t : thresholds) {
                auto cross = r.crossing_for(t);
                csv << ',';
                if (cross) csv << *cross;
            }
            csv << ',' << format_double(r.final_fidelity) << ','
                << format_double(r.max_fidelity) << ','
                << format_double(r.best_cost) << ','
                << format_double(r.optimal_time) << ',' << r.ground_degeneracy
                << ',' << r.error << '\n';
        }
        write_text_file((out_dir / "runs.csv").string(), csv.str());
    }

    {
        std::ostringstream csv;
        csv << "num_flights,num_gates,n_qubits,encoding,family,layers,xi,runs";
        for (double t : thresholds) {
            std::string suffix = format_double(t);
            csv << ",fraction_" << suffix << ",successes_" << suffix << ",nbar_"
                << suffix;
        }
        csv << '\n';
        for (const auto& row : summarize(records, thresholds)) {
            csv << row.num_flights << ',' << row.num_gates << ','
                << row.n_qubits << ',' << to_string(row.encoding) << ','
                << to_string(row.family) << ',' << row.layers << ','
                << format_double(row.xi) << ',' << row.runs;
            for (const auto& pt : row.per_threshold) {
                csv << ',' << format_double(pt.fraction) << ',' << pt.successes
                    << ',';
                if (pt.nbar) csv << format_double(*pt.nbar);
            }
            csv << '\n';
        }
        write_text_file((out_dir / "summary.csv").string(), csv.str());
    }

    {
        std::ostringstream csv;
        csv << "encoding,family,layers,xi,n_qubits,threshold,nbar,successes,"
               "runs\n";
        for (double t : thresholds) {
            for (const auto& row : average_evals_to_threshold(records, t)) {
                csv << to_string(row.encoding) << ',' << to_string(row.family)
                    << ',' << row.layers << ',' << format_double(row.xi) << ','
                    << row.n_qubits << ',' << format_double(t) << ',';
                if (row.nbar) csv << format_double(*row.nbar);
                csv << ',' << row.successes << ',' << row.runs << '\n';
            }
        }
        write_text_file((out_dir / "scaling.csv").string(), csv.str());
    }

    {
        auto curves_dir = out_dir / "curves";
        std::filesystem::create_directories(curves_dir);
        std::vector<double> grid;
        for (int i = 0; i <= 100; ++i) grid.push_back(0.5 * i);
        std::map<std::tuple<int, int, int, double>, std::vector<RunRecord>>
            groups;
        for (const auto& r : records) {
            groups[std::make_tuple(static_cast<int>(r.encoding),
                                   static_cast<int>(r.family), r.layers, r.xi)]
                .push_back(r);
        }
        for (const auto& [key, group] : groups) {
            for (double t : thresholds) {
                auto curve = fraction_reaching(group, t, grid);
                std::ostringstream name;
                name << "curve_" << to_string(group.front().encoding) << '_'
                     << to_string(group.front().family) << "_l"
                     << group.front().layers << "_xi"
                     << format_double(group.front().xi) << "_thr"
                     << format_double(t) << ".csv";
                std::ostringstream csv;
                csv << "normalized_iterations,fraction\n";
                for (std::size_t i = 0; i < grid.size(); ++i)
                    csv << format_double(grid[i]) << ','
                        << format_double(curve[i]) << '\n';
                write_text_file((curves_dir / name.str()).string(), csv.str());
            }
        }
    }

    {
        json sizes = json::array();
        for (auto [f, g] : config.sizes) {
            sizes.push_back(
                json{{"num_flights", f},
                     {"num_gates", g},
                     {"qubits_onehot", qubits_for(f, g, EncodingScheme::one_hot)},
                     {"qubits_binary", qubits_for(f, g, EncodingScheme::binary)}});
        }
        json manifest{{"config", sweep_config_to_json(config)},
                      {"config_hash", config_hash(config)},
                      {"base_seed", config.base_seed},
                      {"record_count", records.size()},
                      {"sizes", sizes}};
        write_text_file((out_dir / "manifest.json").string(),
                        manifest.dump(2) + "\n");
    }
}

/// Factorization rule for the one-hot problem sizes |F| x |G|: the largest
/// gate count with |G| <= |F|.
inline std::pair<int, int> factor_size(int product) {
    int best_g = 1;
    for (int g = 2; g * g <= product; ++g)
        if (product % g == 0) best_g = g;
    return {product / best_g, best_g};
}

namespace detail {

inline GenerationConfig preset_generation() {
    GenerationConfig gen;
    gen.max_passengers = 9;
    gen.time_horizon = 240;
    gen.min_duration = 30;
    gen.max_duration = 60;
    gen.t_buf = 10;
    gen.difficulty_pool_factor = 2.0;
    return gen;
}

}  // namespace detail

/// Main study: both encodings over problem sizes 6..18, entangling ansatz,
/// the full xi and layer grids, 50 instances x 5 restarts.
inline SweepConfig preset_main_study(int max_qubits = 18) {
    SweepConfig c;
    c.sizes.clear();
    for (int p : {6, 8, 10, 12, 14, 16, 18}) {
        auto [f, g] = factor_size(p);
        if (qubits_for(f, g, EncodingScheme::binary) <= max_qubits)
            c.sizes.emplace_back(f, g);
    }
    c.encodings = {EncodingScheme::one_hot, EncodingScheme::binary};
    c.families = {AnsatzFamily::entangling};
    c.generation = detail::preset_generation();
    c.max_qubits = max_qubits;
    c.base_seed = 20260810;
    return c;
}

/// One-hot variants: same sizes, one-hot encoding only, with and without
/// entangling layers.
inline SweepConfig preset_onehot_variants(int max_qubits = 18) {
    SweepConfig c = preset_main_study(max_qubits);
    c.sizes.clear();
    for (int p : {6, 8, 10, 12, 14, 16, 18}) {
        auto [f, g] = factor_size(p);
        if (qubits_for(f, g, EncodingScheme::one_hot) <= max_qubits)
            c.sizes.emplace_back(f, g);
    }
    c.encodings = {EncodingScheme::one_hot};
    c.families = {AnsatzFamily::entangling, AnsatzFamily::product};
    return c;
}

/// |G| = 4 scaling study: binary encoding with M = 2 has no cyclic aliases,
/// so ground states are non-degenerate unless the instance itself has ties.
inline SweepConfig preset_g4_scaling(int max_qubits = 18) {
    SweepConfig c;
    c.sizes.clear();
    for (int f = 2; 2 * f <= max_qubits; ++f) c.sizes.emplace_back(f, 4);
    c.encodings = {EncodingScheme::binary};
    c.families = {AnsatzFamily::entangling};
    c.xis = {0.01, 0.1};
    c.generation = detail::preset_generation();
    c.max_qubits = max_qubits;
    c.base_seed = 20260810;
    return c;
}

}  // namespace fga
