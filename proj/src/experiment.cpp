// Copyright 2026 The QCQO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcqo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qcqo/diagnostics.hpp"
#include "qcqo/error.hpp"

namespace qcqo {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
            throw ParseError(std::string(where) + ": unknown key '" + key + "'");
        }
    }
}

template <typename T>
T get(const json& obj, const char* key, const char* where) {
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string(where) + "." + key + ": " + e.what());
    }
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n < 1) throw InvalidArgument("n must be at least 1");
    if (algorithm == Algorithm::kFixed) {
        if (!sigma) throw InvalidArgument("fixed algorithm requires sigma");
        if (!(*sigma > 0.0)) throw InvalidArgument("sigma must be positive");
    } else {
        if (!window) throw InvalidArgument("adaptive algorithm requires a window size T");
        if (*window < 1) throw InvalidArgument("window size T must be at least 1");
    }
    if (solver == SolverKind::kExhaustive) {
        if (exhaustive_cap < 1 || exhaustive_cap > 30) {
            throw InvalidArgument("exhaustive cap must lie in [1, 30]");
        }
        if (n > exhaustive_cap) {
            throw InvalidArgument("exhaustive solver supports n <= " +
                                  std::to_string(exhaustive_cap) + ", got " + std::to_string(n));
        }
    } else {
        sa.validate();
    }
    if (runs < 1) throw InvalidArgument("runs must be at least 1");
    if (jobs < 1) throw InvalidArgument("jobs must be at least 1");
    if (max_seconds && !(*max_seconds > 0.0)) throw InvalidArgument("max_seconds must be positive");
    if (!dataset.path) {
        const auto& s = dataset.synthetic;
        if (s.dim < 2 || s.samples < s.dim || !(s.target_norm > 0.0) || s.noise_std < 0.0) {
            throw InvalidArgument("synthetic dataset needs d >= 2, N >= d, target_norm > 0");
        }
    }
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("config: top level must be an object");
    reject_unknown(root,
                   {"dataset", "algorithm", "n", "sigma", "T", "solver", "iterations", "runs",
                    "seed", "output", "jobs", "loss_threshold", "max_seconds"},
                   "config");

    ExperimentConfig cfg;
    if (root.contains("dataset")) {
        const json& ds = root["dataset"];
        if (!ds.is_object()) throw ParseError("config.dataset must be an object");
        reject_unknown(ds, {"path", "d", "N", "target_norm", "noise", "seed"}, "config.dataset");
        if (ds.contains("path")) cfg.dataset.path = get<std::string>(ds, "path", "dataset");
        if (ds.contains("d")) cfg.dataset.synthetic.dim = get<Eigen::Index>(ds, "d", "dataset");
        if (ds.contains("N")) cfg.dataset.synthetic.samples = get<Eigen::Index>(ds, "N", "dataset");
        if (ds.contains("target_norm")) {
            cfg.dataset.synthetic.target_norm = get<double>(ds, "target_norm", "dataset");
        }
        if (ds.contains("noise")) cfg.dataset.synthetic.noise_std = get<double>(ds, "noise", "dataset");
        if (ds.contains("seed")) cfg.dataset.seed = get<Seed>(ds, "seed", "dataset");
    }
    if (root.contains("algorithm")) {
        const auto name = get<std::string>(root, "algorithm", "config");
        if (name == "fixed") {
            cfg.algorithm = Algorithm::kFixed;
        } else if (name == "adaptive") {
            cfg.algorithm = Algorithm::kAdaptive;
        } else {
            throw ParseError("config.algorithm must be 'fixed' or 'adaptive', got '" + name + "'");
        }
    }
    if (root.contains("n")) cfg.n = get<Eigen::Index>(root, "n", "config");
    if (root.contains("sigma")) cfg.sigma = get<double>(root, "sigma", "config");
    if (root.contains("T")) cfg.window = get<std::size_t>(root, "T", "config");
    if (root.contains("solver")) {
        const json& s = root["solver"];
        if (s.is_string()) {
            const auto type = s.get<std::string>();
            if (type == "exhaustive") {
                cfg.solver = SolverKind::kExhaustive;
            } else if (type == "sa") {
                cfg.solver = SolverKind::kAnnealing;
            } else {
                throw ParseError("config.solver must be 'exhaustive' or 'sa'");
            }
        } else if (s.is_object()) {
            reject_unknown(s, {"type", "reads", "sweeps", "t_initial", "t_final", "max_n"},
                           "config.solver");
            const auto type = s.contains("type") ? get<std::string>(s, "type", "solver") : "exhaustive";
            if (type == "exhaustive") {
                cfg.solver = SolverKind::kExhaustive;
            } else if (type == "sa") {
                cfg.solver = SolverKind::kAnnealing;
            } else {
                throw ParseError("config.solver.type must be 'exhaustive' or 'sa'");
            }
            if (s.contains("reads")) cfg.sa.reads = get<std::uint32_t>(s, "reads", "solver");
            if (s.contains("sweeps")) cfg.sa.sweeps = get<std::uint32_t>(s, "sweeps", "solver");
            if (s.contains("t_initial")) cfg.sa.t_initial = get<double>(s, "t_initial", "solver");
            if (s.contains("t_final")) cfg.sa.t_final = get<double>(s, "t_final", "solver");
            if (s.contains("max_n")) cfg.exhaustive_cap = get<int>(s, "max_n", "solver");
        } else {
            throw ParseError("config.solver must be a string or an object");
        }
    }
    if (root.contains("iterations")) cfg.iterations = get<std::uint64_t>(root, "iterations", "config");
    if (root.contains("runs")) cfg.runs = get<std::size_t>(root, "runs", "config");
    if (root.contains("seed")) cfg.seed = get<Seed>(root, "seed", "config");
    if (root.contains("output")) cfg.output_dir = get<std::string>(root, "output", "config");
    if (root.contains("jobs")) cfg.jobs = get<std::size_t>(root, "jobs", "config");
    if (root.contains("loss_threshold")) {
        cfg.loss_threshold = get<double>(root, "loss_threshold", "config");
    }
    if (root.contains("max_seconds")) cfg.max_seconds = get<double>(root, "max_seconds", "config");
    return cfg;
}

std::string ExperimentConfig::to_json() const {
    json root;
    json ds;
    if (dataset.path) {
        ds["path"] = *dataset.path;
    } else {
        ds["d"] = dataset.synthetic.dim;
        ds["N"] = dataset.synthetic.samples;
        ds["target_norm"] = dataset.synthetic.target_norm;
        ds["noise"] = dataset.synthetic.noise_std;
        ds["seed"] = dataset.seed;
    }
    root["dataset"] = ds;
    root["algorithm"] = algorithm == Algorithm::kFixed ? "fixed" : "adaptive";
    root["n"] = n;
    if (sigma) root["sigma"] = *sigma;
    if (window) root["T"] = *window;
    json s;
    if (solver == SolverKind::kExhaustive) {
        s["type"] = "exhaustive";
        s["max_n"] = exhaustive_cap;
    } else {
        s["type"] = "sa";
        s["reads"] = sa.reads;
        s["sweeps"] = sa.sweeps;
        if (sa.t_initial) s["t_initial"] = *sa.t_initial;
        if (sa.t_final) s["t_final"] = *sa.t_final;
    }
    root["solver"] = s;
    root["iterations"] = iterations;
    root["runs"] = runs;
    root["seed"] = seed;
    root["output"] = output_dir;
    root["jobs"] = jobs;
    if (loss_threshold) root["loss_threshold"] = *loss_threshold;
    if (max_seconds) root["max_seconds"] = *max_seconds;
    return root.dump(2);
}

std::unique_ptr<QuboSolver> make_solver(const ExperimentConfig& cfg) {
    if (cfg.solver == SolverKind::kExhaustive) {
        return std::make_unique<ExhaustiveSolver>(cfg.exhaustive_cap);
    }
    return std::make_unique<AnnealingSolver>(cfg.sa);
}

RegressionDataset load_or_generate(const DatasetSource& source) {
    if (source.path) return load_dataset(*source.path);
    return generate_synthetic(source.synthetic, source.seed);
}

RunResult run_single(const ExperimentConfig& cfg, const QuadraticProgram& qp,
                     const QuboSolver& solver, std::size_t run,
                     const std::optional<Vector>& optimum) {
    StoppingRule stop;
    stop.max_iterations = cfg.iterations;
    stop.loss_threshold = cfg.loss_threshold;
    if (cfg.max_seconds) stop.max_wall_time = std::chrono::duration<double>(*cfg.max_seconds);
    const Seed seed = cfg.seed + run;
    const Vector w0 = Vector::Zero(qp.dim());
    if (cfg.algorithm == Algorithm::kFixed) {
        return run_fixed(qp, w0, *cfg.sigma, cfg.n, solver, stop, seed, optimum);
    }
    return run_adaptive(qp, w0, cfg.n, *cfg.window, solver, stop, seed, optimum);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, double initial_sigma) {
    const auto dist = [](const std::optional<double>& d) { return d ? fmt(*d) : std::string("nan"); };
    out << "t,mse,dist_wstar,sigma,step_norm,qubo_energy\n";
    out << "0," << fmt(trajectory.initial_loss) << ',' << dist(trajectory.initial_distance) << ','
        << fmt(initial_sigma) << ",0,0\n";
    for (const auto& r : trajectory.records) {
        out << r.t << ',' << fmt(r.loss) << ',' << dist(r.distance_to_optimum) << ','
            << fmt(r.sigma) << ',' << fmt(r.step_norm) << ',' << fmt(r.qubo_energy) << '\n';
    }
}

bool ExperimentSummary::all_ok() const {
    return std::all_of(runs.begin(), runs.end(), [](const RunSummary& r) { return r.ok; });
}

std::string ExperimentSummary::to_json() const {
    json root;
    root["output_dir"] = output_dir;
    root["aggregate"] = aggregate_file;
    root["seconds"] = seconds;
    root["runs"] = json::array();
    for (const auto& r : runs) {
        json j;
        j["run"] = r.run;
        j["seed"] = r.seed;
        j["status"] = r.ok ? "ok" : "failed";
        if (!r.ok) j["error"] = r.error;
        j["iterations"] = r.iterations;
        if (r.ok) {
            j["final_mse"] = r.final_mse;
            if (r.final_distance) j["final_dist_wstar"] = *r.final_distance;
            j["file"] = r.file;
        }
        root["runs"].push_back(j);
    }
    return root.dump(2);
}

namespace {

std::string resolve_output_dir(const std::string& configured) {
    if (!configured.empty()) return configured;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return "qcqo-out";
}

struct RunColumns {
    std::vector<double> mse;
    std::vector<double> dist;
    std::vector<double> sigma;
};

RunColumns columns_of(const Trajectory& tr, double initial_sigma) {
    RunColumns c;
    const double nan = std::nan("");
    c.mse.push_back(tr.initial_loss);
    c.dist.push_back(tr.initial_distance.value_or(nan));
    c.sigma.push_back(initial_sigma);
    for (const auto& r : tr.records) {
        c.mse.push_back(r.loss);
        c.dist.push_back(r.distance_to_optimum.value_or(nan));
        c.sigma.push_back(r.sigma);
    }
    return c;
}

double median(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

double mean(const std::vector<double>& v) {
    if (v.empty()) return std::nan("");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Runs that stopped early keep reporting their last value (anytime output).
void write_aggregate(const std::string& path, const std::vector<RunColumns>& runs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "t,mse_median,mse_mean,dist_median,dist_mean,sigma_median\n";
    std::size_t rows = 0;
    for (const auto& r : runs) rows = std::max(rows, r.mse.size());
    std::vector<double> m, d, s;
    for (std::size_t t = 0; t < rows; ++t) {
        m.clear();
        d.clear();
        s.clear();
        for (const auto& r : runs) {
            const std::size_t k = std::min(t, r.mse.size() - 1);
            m.push_back(r.mse[k]);
            if (!std::isnan(r.dist[k])) d.push_back(r.dist[k]);
            s.push_back(r.sigma[k]);
        }
        out << t << ',' << fmt(median(m)) << ',' << fmt(mean(m)) << ',' << fmt(median(d)) << ','
            << fmt(mean(d)) << ',' << fmt(median(s)) << '\n';
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

double initial_sigma_of(const ExperimentConfig& cfg) {
    return cfg.algorithm == Algorithm::kFixed ? *cfg.sigma : 1.0;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto started = std::chrono::steady_clock::now();

    ExperimentSummary summary;
    summary.output_dir = resolve_output_dir(cfg.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(summary.output_dir, ec);
    if (ec) throw IoError("cannot create output directory '" + summary.output_dir + "': " + ec.message());

    const RegressionDataset ds = load_or_generate(cfg.dataset);
    const QuadraticProgram qp = to_quadratic_program(ds);
    std::optional<Vector> optimum;
    try {
        optimum = closed_form_optimum(ds);
    } catch (const SingularError&) {
        // Distance column stays empty.
    }
    const auto solver = make_solver(cfg);
    const double sigma0 = initial_sigma_of(cfg);

    summary.runs.resize(cfg.runs);
    std::vector<RunColumns> columns(cfg.runs);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t r = next++; r < cfg.runs; r = next++) {
            RunSummary& rs = summary.runs[r];
            rs.run = r;
            rs.seed = cfg.seed + r;
            char name[32];
            std::snprintf(name, sizeof name, "run_%03zu.csv", r);
            const std::string path = (std::filesystem::path(summary.output_dir) / name).string();
            try {
                const RunResult res = run_single(cfg, qp, *solver, r, optimum);
                std::ofstream out(path, std::ios::binary);
                if (!out) throw IoError("cannot open '" + path + "' for writing");
                write_trajectory_csv(out, res.trajectory, sigma0);
                if (!out) throw IoError("failed writing '" + path + "'");
                columns[r] = columns_of(res.trajectory, sigma0);
                rs.ok = true;
                rs.iterations = res.trajectory.records.size();
                rs.final_mse = columns[r].mse.back();
                if (optimum) rs.final_distance = columns[r].dist.back();
                rs.file = path;
            } catch (const std::exception& e) {
                rs.ok = false;
                rs.error = e.what();
            }
        }
    };
    const std::size_t threads = std::min(cfg.jobs, cfg.runs);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    }

    std::vector<RunColumns> ok_columns;
    for (std::size_t r = 0; r < cfg.runs; ++r) {
        if (summary.runs[r].ok) ok_columns.push_back(std::move(columns[r]));
    }
    if (!ok_columns.empty()) {
        summary.aggregate_file = (std::filesystem::path(summary.output_dir) / "aggregate.csv").string();
        write_aggregate(summary.aggregate_file, ok_columns);
    }
    summary.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    const std::string summary_path =
        (std::filesystem::path(summary.output_dir) / "summary.json").string();
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + summary_path + "' for writing");
    out << summary.to_json() << '\n';
    return summary;
}

void run_diagnostics(const ExperimentConfig& cfg, const std::string& csv_path) {
    cfg.validate();
    const RegressionDataset ds = load_or_generate(cfg.dataset);
    const QuadraticProgram qp = to_quadratic_program(ds);
    const Vector optimum = closed_form_optimum(ds);
    const auto solver = make_solver(cfg);
    const RunResult res = run_single(cfg, qp, *solver, 0, optimum);
    const auto rows = convergence_diagnostics(qp, res.trajectory, optimum);
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + csv_path + "' for writing");
    write_diagnostics_csv(out, rows);
    if (!out) throw IoError("failed writing '" + csv_path + "'");
}

std::vector<QubitCountRow> compare_qubit_counts(Eigen::Index dim,
                                                const std::vector<double>& epsilons,
                                                Eigen::Index n) {
    if (dim < 1) throw InvalidArgument("qubit table: dimension must be at least 1");
    std::vector<QubitCountRow> rows;
    for (double eps : epsilons) {
        if (!(eps > 0.0 && eps <= 0.5)) throw InvalidArgument("qubit table: epsilon must lie in (0, 0.5]");
        const int k = min_bits(eps);
        rows.push_back({eps, k, static_cast<long long>(dim) * k, static_cast<long long>(n)});
    }
    return rows;
}

void write_qubit_table_csv(std::ostream& out, const std::vector<QubitCountRow>& rows) {
    out << "epsilon,bits_per_value,precision_total,qcqo_n\n";
    for (const auto& r : rows) {
        out << fmt(r.epsilon) << ',' << r.bits_per_value << ',' << r.precision_total << ','
            << r.qcqo_variables << '\n';
    }
}

}  // namespace qcqo
