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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcqo/linreg.hpp"
#include "qcqo/optimizer.hpp"
#include "qcqo/qubo.hpp"

namespace qcqo {

enum class Algorithm { kFixed, kAdaptive };
enum class SolverKind { kExhaustive, kAnnealing };

/// Either a CSV path or the recipe for a synthetic dataset.
struct DatasetSource {
    std::optional<std::string> path;
    SyntheticOptions synthetic;
    Seed seed = 0;
};

/// Environment variable consulted when a config has no output directory.
inline constexpr const char* kOutputDirEnv = "QCQO_OUTPUT_DIR";

struct ExperimentConfig {
    DatasetSource dataset;
    Algorithm algorithm = Algorithm::kFixed;
    Eigen::Index n = 16;
    std::optional<double> sigma;
    std::optional<std::size_t> window;
    SolverKind solver = SolverKind::kExhaustive;
    SAParams sa;
    int exhaustive_cap = kExhaustiveMaxVariables;
    std::uint64_t iterations = 1000;
    std::optional<double> loss_threshold;
    std::optional<double> max_seconds;
    std::size_t runs = 10;
    Seed seed = 0;
    std::string output_dir;
    std::size_t jobs = 1;

    void validate() const;

    /// Parses the JSON config format; unknown keys are rejected.
    static ExperimentConfig from_json(const std::string& text);
    std::string to_json() const;
};

/// Builds the solver a config asks for.
std::unique_ptr<QuboSolver> make_solver(const ExperimentConfig& cfg);

/// Loads or generates the dataset named by the config.
RegressionDataset load_or_generate(const DatasetSource& source);

/// Runs one optimization (run index `run`, seed = base seed + run).
RunResult run_single(const ExperimentConfig& cfg, const QuadraticProgram& qp,
                     const QuboSolver& solver, std::size_t run,
                     const std::optional<Vector>& optimum);

/// Per-run trajectory CSV: `t,mse,dist_wstar,sigma,step_norm,qubo_energy`,
/// one row for the start point (t = 0) and one per iteration, floats %.10g.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, double initial_sigma);

struct RunSummary {
    std::size_t run = 0;
    Seed seed = 0;
    bool ok = false;
    std::string error;
    std::uint64_t iterations = 0;
    double final_mse = 0.0;
    std::optional<double> final_distance;
    std::string file;
};

struct ExperimentSummary {
    std::string output_dir;
    std::vector<RunSummary> runs;
    std::string aggregate_file;
    double seconds = 0.0;

    bool all_ok() const;
    std::string to_json() const;
};

/// Executes `runs` independent runs (up to `jobs` at a time), writes
/// run_NNN.csv per run plus aggregate.csv and summary.json. A run that throws
/// is recorded as failed; the rest still complete.
ExperimentSummary run_experiment(const ExperimentConfig& cfg);

/// Runs the first run of `cfg` and writes the convergence report to `csv_path`.
void run_diagnostics(const ExperimentConfig& cfg, const std::string& csv_path);

struct QubitCountRow {
    double epsilon = 0.0;
    int bits_per_value = 0;
    long long precision_total = 0;
    long long qcqo_variables = 0;
};

/// Explicit encoding needs d·⌈log₂(1/(2ε)+1)⌉ bits per QUBO; QCQO needs n.
std::vector<QubitCountRow> compare_qubit_counts(Eigen::Index dim,
                                                const std::vector<double>& epsilons,
                                                Eigen::Index n);
void write_qubit_table_csv(std::ostream& out, const std::vector<QubitCountRow>& rows);

}  // namespace qcqo
