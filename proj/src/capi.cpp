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

#include "qcqo/qcqo.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "qcqo/diagnostics.hpp"
#include "qcqo/error.hpp"
#include "qcqo/experiment.hpp"
#include "qcqo/linreg.hpp"
#include "qcqo/optimizer.hpp"
#include "qcqo/qubo.hpp"

struct qcqo_program {
    qcqo::QuadraticProgram value;
};

struct qcqo_qubo {
    qcqo::QuboInstance value;
};

struct qcqo_dataset {
    qcqo::RegressionDataset value;
};

struct qcqo_trajectory {
    qcqo::Trajectory value;
    double initial_sigma;
};

namespace {

thread_local std::string g_last_error;

qcqo_status fail(qcqo_status status, std::string message) {
    g_last_error = std::move(message);
    return status;
}

qcqo_status map_code(qcqo::ErrorCode code) {
    switch (code) {
        case qcqo::ErrorCode::kInvalidArgument: return QCQO_ERR_INVALID_ARGUMENT;
        case qcqo::ErrorCode::kDimension: return QCQO_ERR_DIMENSION;
        case qcqo::ErrorCode::kSize: return QCQO_ERR_SIZE;
        case qcqo::ErrorCode::kSingular: return QCQO_ERR_SINGULAR;
        case qcqo::ErrorCode::kNotConvex: return QCQO_ERR_NOT_CONVEX;
        case qcqo::ErrorCode::kIo: return QCQO_ERR_IO;
        case qcqo::ErrorCode::kParse: return QCQO_ERR_PARSE;
        case qcqo::ErrorCode::kSolver: return QCQO_ERR_SOLVER;
    }
    return QCQO_ERR_INTERNAL;
}

template <typename Fn>
qcqo_status guarded(Fn&& fn) noexcept {
    try {
        g_last_error.clear();
        return fn();
    } catch (const qcqo::Error& e) {
        return fail(map_code(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(QCQO_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(QCQO_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(QCQO_ERR_INTERNAL, "unknown error");
    }
}

#define QCQO_REQUIRE(ptr) \
    if ((ptr) == nullptr) return fail(QCQO_ERR_NULL_POINTER, #ptr " must not be NULL")

qcqo::Vector vec(const double* data, std::size_t n) {
    return Eigen::Map<const qcqo::Vector>(data, static_cast<Eigen::Index>(n));
}

qcqo::Matrix row_major(const double* data, std::size_t rows, std::size_t cols) {
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    return Eigen::Map<const RowMajor>(data, static_cast<Eigen::Index>(rows),
                                      static_cast<Eigen::Index>(cols));
}

void copy_out(const qcqo::Vector& v, double* out) {
    std::memcpy(out, v.data(), sizeof(double) * static_cast<std::size_t>(v.size()));
}

qcqo_status emit_text(const std::string& text, char* out, std::size_t capacity, std::size_t* needed) {
    if (needed) *needed = text.size() + 1;
    if (out == nullptr || capacity < text.size() + 1) {
        if (out != nullptr && capacity > 0) out[0] = '\0';
        return fail(QCQO_ERR_BUFFER_TOO_SMALL,
                    "output buffer needs " + std::to_string(text.size() + 1) + " bytes");
    }
    std::memcpy(out, text.c_str(), text.size() + 1);
    return QCQO_OK;
}

qcqo::SAParams to_sa(const qcqo_sa_params& p) {
    qcqo::SAParams sa;
    sa.reads = p.reads;
    sa.sweeps = p.sweeps;
    if (p.t_initial > 0.0) sa.t_initial = p.t_initial;
    if (p.t_final > 0.0) sa.t_final = p.t_final;
    return sa;
}

void copy_z(const qcqo::BinaryVector& z, uint8_t* out) { std::memcpy(out, z.data(), z.size()); }

}  // namespace

extern "C" {

const char* qcqo_version(void) { return "1.0.0"; }

const char* qcqo_status_string(qcqo_status status) {
    switch (status) {
        case QCQO_OK: return "ok";
        case QCQO_ERR_INVALID_ARGUMENT: return "invalid argument";
        case QCQO_ERR_DIMENSION: return "dimension mismatch";
        case QCQO_ERR_SIZE: return "problem too large";
        case QCQO_ERR_SINGULAR: return "singular system";
        case QCQO_ERR_NOT_CONVEX: return "program is not convex";
        case QCQO_ERR_IO: return "i/o error";
        case QCQO_ERR_PARSE: return "parse error";
        case QCQO_ERR_SOLVER: return "solver failure";
        case QCQO_ERR_BUFFER_TOO_SMALL: return "buffer too small";
        case QCQO_ERR_NULL_POINTER: return "null pointer";
        case QCQO_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* qcqo_last_error(void) { return g_last_error.c_str(); }

qcqo_status qcqo_program_create(size_t d, const double* A, const double* a, double c,
                                qcqo_program** out) {
    QCQO_REQUIRE(A);
    QCQO_REQUIRE(a);
    QCQO_REQUIRE(out);
    return guarded([&] {
        if (d == 0) return fail(QCQO_ERR_DIMENSION, "dimension must be at least 1");
        *out = new qcqo_program{qcqo::QuadraticProgram(row_major(A, d, d), vec(a, d), c)};
        return QCQO_OK;
    });
}

void qcqo_program_destroy(qcqo_program* program) { delete program; }

size_t qcqo_program_dim(const qcqo_program* program) {
    return program ? static_cast<size_t>(program->value.dim()) : 0;
}

qcqo_status qcqo_program_loss(const qcqo_program* program, const double* w, double* out) {
    QCQO_REQUIRE(program);
    QCQO_REQUIRE(w);
    QCQO_REQUIRE(out);
    return guarded([&] {
        *out = program->value.loss(vec(w, program->value.dim()));
        return QCQO_OK;
    });
}

qcqo_status qcqo_program_gradient(const qcqo_program* program, const double* w, double* out) {
    QCQO_REQUIRE(program);
    QCQO_REQUIRE(w);
    QCQO_REQUIRE(out);
    return guarded([&] {
        copy_out(program->value.gradient(vec(w, program->value.dim())), out);
        return QCQO_OK;
    });
}

qcqo_status qcqo_program_spectral_norm(const qcqo_program* program, double* out) {
    QCQO_REQUIRE(program);
    QCQO_REQUIRE(out);
    *out = program->value.spectral_norm();
    return QCQO_OK;
}

qcqo_sa_params qcqo_sa_params_default(void) { return {100, 1000, 0.0, 0.0}; }

qcqo_status qcqo_qubo_create(size_t n, const double* Q, qcqo_qubo** out) {
    QCQO_REQUIRE(Q);
    QCQO_REQUIRE(out);
    return guarded([&] {
        if (n == 0) return fail(QCQO_ERR_DIMENSION, "QUBO must have at least one variable");
        *out = new qcqo_qubo{qcqo::QuboInstance(row_major(Q, n, n))};
        return QCQO_OK;
    });
}

qcqo_status qcqo_qubo_build(const qcqo_program* program, const double* w, size_t n,
                            const double* R, qcqo_qubo** out) {
    QCQO_REQUIRE(program);
    QCQO_REQUIRE(w);
    QCQO_REQUIRE(R);
    QCQO_REQUIRE(out);
    return guarded([&] {
        if (n == 0) return fail(QCQO_ERR_DIMENSION, "update matrix needs at least one row");
        const auto d = static_cast<size_t>(program->value.dim());
        qcqo::UpdateMatrix r{row_major(R, n, d)};
        *out = new qcqo_qubo{qcqo::build_qubo(program->value, vec(w, d), r)};
        return QCQO_OK;
    });
}

void qcqo_qubo_destroy(qcqo_qubo* qubo) { delete qubo; }

size_t qcqo_qubo_size(const qcqo_qubo* qubo) {
    return qubo ? static_cast<size_t>(qubo->value.size()) : 0;
}

qcqo_status qcqo_qubo_weights(const qcqo_qubo* qubo, double* out) {
    QCQO_REQUIRE(qubo);
    QCQO_REQUIRE(out);
    const auto& q = qubo->value.weights();
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
        for (Eigen::Index j = 0; j < q.cols(); ++j) out[i * q.cols() + j] = q(i, j);
    }
    return QCQO_OK;
}

qcqo_status qcqo_qubo_energy(const qcqo_qubo* qubo, const uint8_t* z, double* out) {
    QCQO_REQUIRE(qubo);
    QCQO_REQUIRE(z);
    QCQO_REQUIRE(out);
    return guarded([&] {
        *out = qubo->value.energy(qcqo::BinaryVector(z, z + qubo->value.size()));
        return QCQO_OK;
    });
}

qcqo_status qcqo_qubo_solve_exhaustive(const qcqo_qubo* qubo, int max_variables, uint8_t* z_out,
                                       double* energy_out) {
    QCQO_REQUIRE(qubo);
    QCQO_REQUIRE(z_out);
    return guarded([&] {
        const int cap = max_variables > 0 ? max_variables : qcqo::kExhaustiveMaxVariables;
        const auto res = qcqo::solve_exhaustive(qubo->value, cap);
        copy_z(res.z, z_out);
        if (energy_out) *energy_out = res.energy;
        return QCQO_OK;
    });
}

qcqo_status qcqo_qubo_solve_sa(const qcqo_qubo* qubo, const qcqo_sa_params* params, uint64_t seed,
                               uint8_t* z_out, double* energy_out) {
    QCQO_REQUIRE(qubo);
    QCQO_REQUIRE(z_out);
    return guarded([&] {
        const qcqo_sa_params p = params ? *params : qcqo_sa_params_default();
        const auto res = qcqo::solve_sa(qubo->value, to_sa(p), seed);
        copy_z(res.z, z_out);
        if (energy_out) *energy_out = res.energy;
        return QCQO_OK;
    });
}

qcqo_status qcqo_qubo_write(const qcqo_qubo* qubo, const char* path) {
    QCQO_REQUIRE(qubo);
    QCQO_REQUIRE(path);
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) return fail(QCQO_ERR_IO, std::string("cannot open '") + path + "' for writing");
        qcqo::write_qubo(out, qubo->value);
        return out ? QCQO_OK : fail(QCQO_ERR_IO, std::string("failed writing '") + path + "'");
    });
}

qcqo_status qcqo_qubo_read(const char* path, qcqo_qubo** out) {
    QCQO_REQUIRE(path);
    QCQO_REQUIRE(out);
    return guarded([&] {
        std::ifstream in(path, std::ios::binary);
        if (!in) return fail(QCQO_ERR_IO, std::string("cannot open '") + path + "'");
        *out = new qcqo_qubo{qcqo::read_qubo(in)};
        return QCQO_OK;
    });
}

qcqo_optimizer_config qcqo_optimizer_config_default(void) {
    qcqo_optimizer_config c;
    c.algorithm = QCQO_FIXED;
    c.n = 16;
    c.sigma = 1.0;
    c.window = 10;
    c.solver = QCQO_SOLVER_EXHAUSTIVE;
    c.sa = qcqo_sa_params_default();
    c.max_iterations = 1000;
    c.loss_threshold = std::nan("");
    c.max_seconds = 0.0;
    c.seed = 0;
    return c;
}

qcqo_status qcqo_optimize(const qcqo_program* program, const double* w0,
                          const qcqo_optimizer_config* config, const double* optimum,
                          double* w_final, qcqo_trajectory** out) {
    QCQO_REQUIRE(program);
    QCQO_REQUIRE(config);
    QCQO_REQUIRE(out);
    return guarded([&] {
        const auto& qp = program->value;
        const Eigen::Index d = qp.dim();
        const qcqo::Vector start = w0 ? vec(w0, d) : qcqo::Vector::Zero(d);
        std::optional<qcqo::Vector> opt;
        if (optimum) opt = vec(optimum, d);

        qcqo::StoppingRule stop;
        if (config->max_iterations > 0) stop.max_iterations = config->max_iterations;
        if (!std::isnan(config->loss_threshold)) stop.loss_threshold = config->loss_threshold;
        if (config->max_seconds > 0.0) {
            stop.max_wall_time = std::chrono::duration<double>(config->max_seconds);
        }

        std::unique_ptr<qcqo::QuboSolver> solver;
        if (config->solver == QCQO_SOLVER_EXHAUSTIVE) {
            solver = std::make_unique<qcqo::ExhaustiveSolver>();
        } else if (config->solver == QCQO_SOLVER_SA) {
            solver = std::make_unique<qcqo::AnnealingSolver>(to_sa(config->sa));
        } else {
            return fail(QCQO_ERR_INVALID_ARGUMENT, "unknown solver kind");
        }

        const auto n = static_cast<Eigen::Index>(config->n);
        qcqo::RunResult res;
        double sigma0 = 1.0;
        if (config->algorithm == QCQO_FIXED) {
            res = qcqo::run_fixed(qp, start, config->sigma, n, *solver, stop, config->seed, opt);
            sigma0 = config->sigma;
        } else if (config->algorithm == QCQO_ADAPTIVE) {
            res = qcqo::run_adaptive(qp, start, n, config->window, *solver, stop, config->seed, opt);
        } else {
            return fail(QCQO_ERR_INVALID_ARGUMENT, "unknown algorithm");
        }
        if (w_final) copy_out(res.w, w_final);
        *out = new qcqo_trajectory{std::move(res.trajectory), sigma0};
        return QCQO_OK;
    });
}

void qcqo_trajectory_destroy(qcqo_trajectory* trajectory) { delete trajectory; }

size_t qcqo_trajectory_length(const qcqo_trajectory* trajectory) {
    return trajectory ? trajectory->value.records.size() : 0;
}

double qcqo_trajectory_initial_loss(const qcqo_trajectory* trajectory) {
    return trajectory ? trajectory->value.initial_loss : std::nan("");
}

qcqo_status qcqo_trajectory_record(const qcqo_trajectory* trajectory, size_t index,
                                   qcqo_iteration_record* out) {
    QCQO_REQUIRE(trajectory);
    QCQO_REQUIRE(out);
    const auto& records = trajectory->value.records;
    if (index >= records.size()) {
        return fail(QCQO_ERR_INVALID_ARGUMENT, "record index " + std::to_string(index) +
                                                   " out of range (" +
                                                   std::to_string(records.size()) + " records)");
    }
    const auto& r = records[index];
    out->t = r.t;
    out->loss = r.loss;
    out->sigma = r.sigma;
    out->step_norm = r.step_norm;
    out->qubo_energy = r.qubo_energy;
    out->distance_to_optimum = r.distance_to_optimum.value_or(std::nan(""));
    out->guarded = r.guarded ? 1 : 0;
    return QCQO_OK;
}

qcqo_status qcqo_trajectory_write_csv(const qcqo_trajectory* trajectory, const char* path) {
    QCQO_REQUIRE(trajectory);
    QCQO_REQUIRE(path);
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) return fail(QCQO_ERR_IO, std::string("cannot open '") + path + "' for writing");
        qcqo::write_trajectory_csv(out, trajectory->value, trajectory->initial_sigma);
        return out ? QCQO_OK : fail(QCQO_ERR_IO, std::string("failed writing '") + path + "'");
    });
}

qcqo_status qcqo_trajectory_write_diagnostics(const qcqo_program* program,
                                              const qcqo_trajectory* trajectory,
                                              const double* optimum, const char* path) {
    QCQO_REQUIRE(program);
    QCQO_REQUIRE(trajectory);
    QCQO_REQUIRE(optimum);
    QCQO_REQUIRE(path);
    return guarded([&] {
        const auto rows = qcqo::convergence_diagnostics(program->value, trajectory->value,
                                                        vec(optimum, program->value.dim()));
        std::ofstream out(path, std::ios::binary);
        if (!out) return fail(QCQO_ERR_IO, std::string("cannot open '") + path + "' for writing");
        qcqo::write_diagnostics_csv(out, rows);
        return out ? QCQO_OK : fail(QCQO_ERR_IO, std::string("failed writing '") + path + "'");
    });
}

qcqo_status qcqo_dataset_generate(size_t d, size_t N, double target_norm, double noise,
                                  uint64_t seed, qcqo_dataset** out) {
    QCQO_REQUIRE(out);
    return guarded([&] {
        qcqo::SyntheticOptions opts;
        opts.dim = static_cast<Eigen::Index>(d);
        opts.samples = static_cast<Eigen::Index>(N);
        opts.target_norm = target_norm;
        opts.noise_std = noise;
        *out = new qcqo_dataset{qcqo::generate_synthetic(opts, seed)};
        return QCQO_OK;
    });
}

qcqo_status qcqo_dataset_create(size_t N, size_t d, const double* X, const double* y,
                                qcqo_dataset** out) {
    QCQO_REQUIRE(X);
    QCQO_REQUIRE(y);
    QCQO_REQUIRE(out);
    return guarded([&] {
        *out = new qcqo_dataset{qcqo::RegressionDataset(row_major(X, N, d), vec(y, N))};
        return QCQO_OK;
    });
}

qcqo_status qcqo_dataset_load(const char* csv_path, qcqo_dataset** out) {
    QCQO_REQUIRE(csv_path);
    QCQO_REQUIRE(out);
    return guarded([&] {
        *out = new qcqo_dataset{qcqo::load_dataset(csv_path)};
        return QCQO_OK;
    });
}

qcqo_status qcqo_dataset_save(const qcqo_dataset* dataset, const char* csv_path) {
    QCQO_REQUIRE(dataset);
    QCQO_REQUIRE(csv_path);
    return guarded([&] {
        qcqo::save_dataset(dataset->value, csv_path);
        return QCQO_OK;
    });
}

void qcqo_dataset_destroy(qcqo_dataset* dataset) { delete dataset; }

qcqo_status qcqo_dataset_shape(const qcqo_dataset* dataset, size_t* N, size_t* d) {
    QCQO_REQUIRE(dataset);
    if (N) *N = static_cast<size_t>(dataset->value.samples());
    if (d) *d = static_cast<size_t>(dataset->value.dim());
    return QCQO_OK;
}

qcqo_status qcqo_dataset_mse(const qcqo_dataset* dataset, const double* w, double* out) {
    QCQO_REQUIRE(dataset);
    QCQO_REQUIRE(w);
    QCQO_REQUIRE(out);
    return guarded([&] {
        *out = qcqo::mse(dataset->value, vec(w, dataset->value.dim()));
        return QCQO_OK;
    });
}

qcqo_status qcqo_dataset_to_program(const qcqo_dataset* dataset, qcqo_program** out) {
    QCQO_REQUIRE(dataset);
    QCQO_REQUIRE(out);
    return guarded([&] {
        *out = new qcqo_program{qcqo::to_quadratic_program(dataset->value)};
        return QCQO_OK;
    });
}

qcqo_status qcqo_dataset_optimum(const qcqo_dataset* dataset, double* w_out) {
    QCQO_REQUIRE(dataset);
    QCQO_REQUIRE(w_out);
    return guarded([&] {
        copy_out(qcqo::closed_form_optimum(dataset->value), w_out);
        return QCQO_OK;
    });
}

qcqo_status qcqo_dataset_true_weights(const qcqo_dataset* dataset, double* w_out) {
    QCQO_REQUIRE(dataset);
    QCQO_REQUIRE(w_out);
    if (!dataset->value.true_weights()) {
        return fail(QCQO_ERR_INVALID_ARGUMENT, "dataset carries no ground-truth weights");
    }
    copy_out(*dataset->value.true_weights(), w_out);
    return QCQO_OK;
}

qcqo_status qcqo_min_bits(double epsilon, int* out) {
    QCQO_REQUIRE(out);
    return guarded([&] {
        *out = qcqo::min_bits(epsilon);
        return QCQO_OK;
    });
}

qcqo_status qcqo_precision_vector(int bits, double* out) {
    QCQO_REQUIRE(out);
    return guarded([&] {
        copy_out(qcqo::precision_vector(bits).weights, out);
        return QCQO_OK;
    });
}

qcqo_status qcqo_experiment_run(const char* config_json, char* summary, size_t capacity,
                                size_t* needed) {
    QCQO_REQUIRE(config_json);
    return guarded([&] {
        const auto cfg = qcqo::ExperimentConfig::from_json(config_json);
        const auto result = qcqo::run_experiment(cfg);
        if (summary != nullptr || needed != nullptr) {
            const qcqo_status st = emit_text(result.to_json(), summary, capacity, needed);
            if (st != QCQO_OK) return st;
        }
        if (!result.all_ok()) {
            for (const auto& r : result.runs) {
                if (!r.ok) return fail(QCQO_ERR_SOLVER, "run " + std::to_string(r.run) + ": " + r.error);
            }
        }
        return QCQO_OK;
    });
}

qcqo_status qcqo_experiment_normalize(const char* config_json, char* out, size_t capacity,
                                      size_t* needed) {
    QCQO_REQUIRE(config_json);
    return guarded([&] {
        const auto cfg = qcqo::ExperimentConfig::from_json(config_json);
        cfg.validate();
        return emit_text(cfg.to_json(), out, capacity, needed);
    });
}

qcqo_status qcqo_experiment_diagnose(const char* config_json, const char* csv_path) {
    QCQO_REQUIRE(config_json);
    QCQO_REQUIRE(csv_path);
    return guarded([&] {
        qcqo::run_diagnostics(qcqo::ExperimentConfig::from_json(config_json), csv_path);
        return QCQO_OK;
    });
}

qcqo_status qcqo_qubit_table(size_t d, const double* epsilons, size_t count, size_t n, char* out,
                             size_t capacity, size_t* needed) {
    QCQO_REQUIRE(epsilons);
    return guarded([&] {
        const auto rows = qcqo::compare_qubit_counts(static_cast<Eigen::Index>(d),
                                                     std::vector<double>(epsilons, epsilons + count),
                                                     static_cast<Eigen::Index>(n));
        std::ostringstream text;
        qcqo::write_qubit_table_csv(text, rows);
        return emit_text(text.str(), out, capacity, needed);
    });
}

}  // extern "C"
