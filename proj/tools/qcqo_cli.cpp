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

// qcqo-cli: experiment runner on top of the C interface.
//
//   qcqo-cli generate --d 16 --N 100000 --seed 1 --out data.csv
//   qcqo-cli run --config grid.json --n 24 --sigma 0.1 --out results/n24
//   qcqo-cli qubits --d 16 --eps 0.25,0.05,0.005 --n 16
//   qcqo-cli diagnose --config grid.json --iters 100 --out diag.csv

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qcqo/qcqo.h"

namespace {

using nlohmann::json;

int report(qcqo_status status) {
    if (status == QCQO_OK) return 0;
    std::cerr << "error: " << qcqo_status_string(status) << ": " << qcqo_last_error() << '\n';
    return status == QCQO_ERR_INVALID_ARGUMENT || status == QCQO_ERR_PARSE ? 2 : 1;
}

struct Overrides {
    std::string config_path;
    std::optional<std::string> algorithm;
    std::optional<long long> n;
    std::optional<double> sigma;
    std::optional<long long> window;
    std::optional<std::string> solver;
    std::optional<unsigned> reads;
    std::optional<unsigned> sweeps;
    std::optional<unsigned long long> iterations;
    std::optional<unsigned long long> runs;
    std::optional<unsigned long long> seed;
    std::optional<std::string> out;
    std::optional<unsigned long long> jobs;
    std::optional<std::string> dataset;
    std::optional<long long> dim;
    std::optional<long long> samples;
    std::optional<unsigned long long> data_seed;
};

void add_experiment_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("-c,--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
    cmd->add_option("--algorithm", o.algorithm, "fixed | adaptive")
        ->check(CLI::IsMember({"fixed", "adaptive"}));
    cmd->add_option("--n", o.n, "QUBO variables per iteration");
    cmd->add_option("--sigma", o.sigma, "target step variance (fixed mode)");
    cmd->add_option("--T", o.window, "step-size window (adaptive mode)");
    cmd->add_option("--solver", o.solver, "exhaustive | sa")->check(CLI::IsMember({"exhaustive", "sa"}));
    cmd->add_option("--reads", o.reads, "annealing restarts per QUBO");
    cmd->add_option("--sweeps", o.sweeps, "annealing sweeps per read");
    cmd->add_option("--iters", o.iterations, "iteration budget");
    cmd->add_option("--runs", o.runs, "independent runs");
    cmd->add_option("--seed", o.seed, "base seed (run r uses seed + r)");
    cmd->add_option("--out", o.out, "output directory (default: $QCQO_OUTPUT_DIR or ./qcqo-out)");
    cmd->add_option("--jobs", o.jobs, "concurrent runs");
    cmd->add_option("--dataset", o.dataset, "dataset CSV instead of synthetic data");
    cmd->add_option("--d", o.dim, "synthetic dataset dimension");
    cmd->add_option("--N", o.samples, "synthetic dataset size");
    cmd->add_option("--data-seed", o.data_seed, "synthetic dataset seed");
}

json build_config(const Overrides& o) {
    json cfg = json::object();
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        std::stringstream text;
        text << in.rdbuf();
        try {
            cfg = json::parse(text.str());
        } catch (const json::parse_error& e) {
            throw CLI::ValidationError("--config", e.what());
        }
    }
    if (o.algorithm) cfg["algorithm"] = *o.algorithm;
    if (o.n) cfg["n"] = *o.n;
    if (o.sigma) cfg["sigma"] = *o.sigma;
    if (o.window) cfg["T"] = *o.window;
    if (o.solver || o.reads || o.sweeps) {
        json& s = cfg["solver"];
        if (s.is_string()) s = json{{"type", s.get<std::string>()}};
        if (s.is_null()) s = json::object();
        if (o.solver) s["type"] = *o.solver;
        if (o.reads) s["reads"] = *o.reads;
        if (o.sweeps) s["sweeps"] = *o.sweeps;
    }
    if (o.iterations) cfg["iterations"] = *o.iterations;
    if (o.runs) cfg["runs"] = *o.runs;
    if (o.seed) cfg["seed"] = *o.seed;
    if (o.out) cfg["output"] = *o.out;
    if (o.jobs) cfg["jobs"] = *o.jobs;
    if (o.dataset || o.dim || o.samples || o.data_seed) {
        json& ds = cfg["dataset"];
        if (ds.is_null()) ds = json::object();
        if (o.dataset) ds["path"] = *o.dataset;
        if (o.dim) ds["d"] = *o.dim;
        if (o.samples) ds["N"] = *o.samples;
        if (o.data_seed) ds["seed"] = *o.data_seed;
    }
    return cfg;
}

int cmd_generate(long long d, long long n_samples, double norm, double noise,
                 unsigned long long seed, const std::string& out) {
    qcqo_dataset* ds = nullptr;
    qcqo_status st = qcqo_dataset_generate(static_cast<size_t>(d), static_cast<size_t>(n_samples),
                                           norm, noise, seed, &ds);
    if (st != QCQO_OK) return report(st);
    st = qcqo_dataset_save(ds, out.c_str());
    qcqo_dataset_destroy(ds);
    if (st != QCQO_OK) return report(st);
    std::cout << "wrote " << out << " and " << out << ".meta\n";
    return 0;
}

std::string output_dir_of(json& cfg) {
    std::string dir = cfg.value("output", "");
    if (dir.empty()) {
        const char* env = std::getenv("QCQO_OUTPUT_DIR");
        dir = env && *env ? env : "qcqo-out";
        cfg["output"] = dir;
    }
    return dir;
}

int cmd_run(const Overrides& o) {
    json cfg = build_config(o);
    const std::string out_dir = output_dir_of(cfg);
    const qcqo_status st = qcqo_experiment_run(cfg.dump().c_str(), nullptr, 0, nullptr);
    if (st != QCQO_OK && st != QCQO_ERR_SOLVER) return report(st);

    std::ifstream in(out_dir + "/summary.json");
    if (!in) {
        std::cerr << "error: no summary written to " << out_dir << '\n';
        return 1;
    }
    const json s = json::parse(in);
    int failed = 0;
    for (const auto& r : s["runs"]) {
        if (r["status"] == "ok") {
            std::printf("run %3d  seed %-6llu  iters %-6llu  final mse %.6g\n", r["run"].get<int>(),
                        r["seed"].get<unsigned long long>(), r["iterations"].get<unsigned long long>(),
                        r["final_mse"].get<double>());
        } else {
            ++failed;
            std::printf("run %3d  FAILED: %s\n", r["run"].get<int>(),
                        r["error"].get<std::string>().c_str());
        }
    }
    std::printf("aggregate: %s (%.2f s)\n", s["aggregate"].get<std::string>().c_str(),
                s["seconds"].get<double>());
    return failed ? 1 : 0;
}

int cmd_qubits(long long d, const std::vector<double>& eps, long long n, const std::string& out) {
    size_t needed = 0;
    qcqo_status st = qcqo_qubit_table(static_cast<size_t>(d), eps.data(), eps.size(),
                                      static_cast<size_t>(n), nullptr, 0, &needed);
    if (st != QCQO_ERR_BUFFER_TOO_SMALL && st != QCQO_OK) return report(st);
    std::string text(needed, '\0');
    st = qcqo_qubit_table(static_cast<size_t>(d), eps.data(), eps.size(), static_cast<size_t>(n),
                          text.data(), text.size(), &needed);
    if (st != QCQO_OK) return report(st);
    text.resize(needed - 1);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) return report(QCQO_ERR_IO);
        f << text;
    }
    return 0;
}

int cmd_diagnose(const Overrides& o, const std::string& out) {
    json cfg = build_config(o);
    cfg["runs"] = 1;
    return report(qcqo_experiment_diagnose(cfg.dump().c_str(), out.c_str()));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadratic programs via sequences of QUBO instances"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qcqo_version()));

    long long gen_d = 16, gen_n = 100000;
    double gen_norm = 100.0, gen_noise = 0.0;
    unsigned long long gen_seed = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "write a synthetic regression dataset");
    gen->add_option("--d", gen_d, "dimension including the bias column")->capture_default_str();
    gen->add_option("--N", gen_n, "number of samples")->capture_default_str();
    gen->add_option("--norm", gen_norm, "norm of the ground-truth weights")->capture_default_str();
    gen->add_option("--noise", gen_noise, "target noise standard deviation")->capture_default_str();
    gen->add_option("--seed", gen_seed, "dataset seed")->capture_default_str();
    gen->add_option("--out", gen_out, "CSV path")->required();

    Overrides run_opts;
    auto* run = app.add_subcommand("run", "run an experiment and write trajectory CSVs");
    add_experiment_options(run, run_opts);

    long long q_d = 16, q_n = 16;
    std::vector<double> q_eps{0.25, 0.05, 0.005};
    std::string q_out;
    auto* qubits = app.add_subcommand("qubits", "compare qubit counts with explicit encodings");
    qubits->add_option("--d", q_d, "problem dimension")->capture_default_str();
    qubits->add_option("--eps", q_eps, "target resolutions in (0, 0.5]")->delimiter(',');
    qubits->add_option("--n", q_n, "QCQO variables per QUBO")->capture_default_str();
    qubits->add_option("--out", q_out, "write CSV here instead of stdout");

    Overrides diag_opts;
    std::string diag_out = "diagnostics.csv";
    auto* diag = app.add_subcommand("diagnose", "convergence report for one run");
    add_experiment_options(diag, diag_opts);
    diag->remove_option(diag->get_option("--out"));
    diag->remove_option(diag->get_option("--runs"));
    diag->remove_option(diag->get_option("--jobs"));
    diag->add_option("--out", diag_out, "report CSV path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*gen) return cmd_generate(gen_d, gen_n, gen_norm, gen_noise, gen_seed, gen_out);
        if (*run) return cmd_run(run_opts);
        if (*qubits) return cmd_qubits(q_d, q_eps, q_n, q_out);
        if (*diag) return cmd_diagnose(diag_opts, diag_out);
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
