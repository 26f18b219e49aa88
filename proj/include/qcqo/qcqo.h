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

/* C interface to the QCQO library.
 *
 * Objects are opaque handles created by *_create / *_generate / *_load and
 * released by the matching *_destroy. Every fallible call returns a
 * qcqo_status; on failure qcqo_last_error() returns a thread-local message
 * describing the most recent error on the calling thread.
 *
 * Matrices are passed row-major. Binary vectors are arrays of uint8_t holding
 * 0 or 1. Text results use the size-query convention: pass a buffer and its
 * capacity; *needed receives the required size including the terminating NUL
 * and QCQO_ERR_BUFFER_TOO_SMALL is returned if it does not fit.
 */

#ifndef QCQO_QCQO_H
#define QCQO_QCQO_H

#include <stddef.h>
#include <stdint.h>

#if defined(QCQO_BUILDING_LIBRARY)
#define QCQO_API __attribute__((visibility("default")))
#else
#define QCQO_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qcqo_status {
    QCQO_OK = 0,
    QCQO_ERR_INVALID_ARGUMENT = 1,
    QCQO_ERR_DIMENSION = 2,
    QCQO_ERR_SIZE = 3,
    QCQO_ERR_SINGULAR = 4,
    QCQO_ERR_NOT_CONVEX = 5,
    QCQO_ERR_IO = 6,
    QCQO_ERR_PARSE = 7,
    QCQO_ERR_SOLVER = 8,
    QCQO_ERR_BUFFER_TOO_SMALL = 9,
    QCQO_ERR_NULL_POINTER = 10,
    QCQO_ERR_INTERNAL = 99
} qcqo_status;

QCQO_API const char* qcqo_version(void);
QCQO_API const char* qcqo_status_string(qcqo_status status);
QCQO_API const char* qcqo_last_error(void);

/* ---- quadratic programs: L(w) = wᵀAw + aᵀw + c ------------------------- */

typedef struct qcqo_program qcqo_program;

/* A (d×d, row-major) is symmetrized on construction. */
QCQO_API qcqo_status qcqo_program_create(size_t d, const double* A, const double* a, double c,
                                         qcqo_program** out);
QCQO_API void qcqo_program_destroy(qcqo_program* program);
QCQO_API size_t qcqo_program_dim(const qcqo_program* program);
QCQO_API qcqo_status qcqo_program_loss(const qcqo_program* program, const double* w, double* out);
QCQO_API qcqo_status qcqo_program_gradient(const qcqo_program* program, const double* w,
                                           double* out);
QCQO_API qcqo_status qcqo_program_spectral_norm(const qcqo_program* program, double* out);

/* ---- QUBO instances and solvers ----------------------------------------- */

typedef struct qcqo_qubo qcqo_qubo;

typedef struct qcqo_sa_params {
    uint32_t reads;
    uint32_t sweeps;
    double t_initial; /* <= 0: derived from the instance */
    double t_final;   /* <= 0: derived from the instance */
} qcqo_sa_params;

QCQO_API qcqo_sa_params qcqo_sa_params_default(void);

QCQO_API qcqo_status qcqo_qubo_create(size_t n, const double* Q, qcqo_qubo** out);
/* Q(w, R) for an n×d update matrix R (row-major). */
QCQO_API qcqo_status qcqo_qubo_build(const qcqo_program* program, const double* w, size_t n,
                                     const double* R, qcqo_qubo** out);
QCQO_API void qcqo_qubo_destroy(qcqo_qubo* qubo);
QCQO_API size_t qcqo_qubo_size(const qcqo_qubo* qubo);
QCQO_API qcqo_status qcqo_qubo_weights(const qcqo_qubo* qubo, double* out);
QCQO_API qcqo_status qcqo_qubo_energy(const qcqo_qubo* qubo, const uint8_t* z, double* out);
/* max_variables = 0 selects the default cap (25). */
QCQO_API qcqo_status qcqo_qubo_solve_exhaustive(const qcqo_qubo* qubo, int max_variables,
                                                uint8_t* z_out, double* energy_out);
QCQO_API qcqo_status qcqo_qubo_solve_sa(const qcqo_qubo* qubo, const qcqo_sa_params* params,
                                        uint64_t seed, uint8_t* z_out, double* energy_out);
QCQO_API qcqo_status qcqo_qubo_write(const qcqo_qubo* qubo, const char* path);
QCQO_API qcqo_status qcqo_qubo_read(const char* path, qcqo_qubo** out);

/* ---- optimizer ---------------------------------------------------------- */

typedef enum qcqo_algorithm { QCQO_FIXED = 0, QCQO_ADAPTIVE = 1 } qcqo_algorithm;
typedef enum qcqo_solver_kind { QCQO_SOLVER_EXHAUSTIVE = 0, QCQO_SOLVER_SA = 1 } qcqo_solver_kind;

typedef struct qcqo_optimizer_config {
    qcqo_algorithm algorithm;
    size_t n;                /* QUBO variables per iteration */
    double sigma;            /* fixed mode: target step variance */
    size_t window;           /* adaptive mode: T */
    qcqo_solver_kind solver;
    qcqo_sa_params sa;
    uint64_t max_iterations; /* 0 together with no other criterion is invalid */
    double loss_threshold;   /* NaN: unused */
    double max_seconds;      /* <= 0: unused */
    uint64_t seed;
} qcqo_optimizer_config;

typedef struct qcqo_iteration_record {
    uint64_t t;
    double loss;
    double sigma;
    double step_norm;
    double qubo_energy;
    double distance_to_optimum; /* NaN when no optimum was supplied */
    int guarded;
} qcqo_iteration_record;

typedef struct qcqo_trajectory qcqo_trajectory;

QCQO_API qcqo_optimizer_config qcqo_optimizer_config_default(void);

/* w0 and optimum may be NULL (zero start, no distance column). w_final, when
 * not NULL, receives d values. */
QCQO_API qcqo_status qcqo_optimize(const qcqo_program* program, const double* w0,
                                   const qcqo_optimizer_config* config, const double* optimum,
                                   double* w_final, qcqo_trajectory** out);
QCQO_API void qcqo_trajectory_destroy(qcqo_trajectory* trajectory);
QCQO_API size_t qcqo_trajectory_length(const qcqo_trajectory* trajectory);
QCQO_API double qcqo_trajectory_initial_loss(const qcqo_trajectory* trajectory);
QCQO_API qcqo_status qcqo_trajectory_record(const qcqo_trajectory* trajectory, size_t index,
                                            qcqo_iteration_record* out);
QCQO_API qcqo_status qcqo_trajectory_write_csv(const qcqo_trajectory* trajectory,
                                               const char* path);
/* Convergence report for a convex program (see README for the columns). */
QCQO_API qcqo_status qcqo_trajectory_write_diagnostics(const qcqo_program* program,
                                                       const qcqo_trajectory* trajectory,
                                                       const double* optimum, const char* path);

/* ---- linear regression --------------------------------------------------- */

typedef struct qcqo_dataset qcqo_dataset;

QCQO_API qcqo_status qcqo_dataset_generate(size_t d, size_t N, double target_norm, double noise,
                                           uint64_t seed, qcqo_dataset** out);
/* X is N×d row-major with the last column all ones. */
QCQO_API qcqo_status qcqo_dataset_create(size_t N, size_t d, const double* X, const double* y,
                                         qcqo_dataset** out);
QCQO_API qcqo_status qcqo_dataset_load(const char* csv_path, qcqo_dataset** out);
QCQO_API qcqo_status qcqo_dataset_save(const qcqo_dataset* dataset, const char* csv_path);
QCQO_API void qcqo_dataset_destroy(qcqo_dataset* dataset);
QCQO_API qcqo_status qcqo_dataset_shape(const qcqo_dataset* dataset, size_t* N, size_t* d);
QCQO_API qcqo_status qcqo_dataset_mse(const qcqo_dataset* dataset, const double* w, double* out);
QCQO_API qcqo_status qcqo_dataset_to_program(const qcqo_dataset* dataset, qcqo_program** out);
QCQO_API qcqo_status qcqo_dataset_optimum(const qcqo_dataset* dataset, double* w_out);
/* QCQO_ERR_INVALID_ARGUMENT when the dataset has no ground truth. */
QCQO_API qcqo_status qcqo_dataset_true_weights(const qcqo_dataset* dataset, double* w_out);

QCQO_API qcqo_status qcqo_min_bits(double epsilon, int* out);
QCQO_API qcqo_status qcqo_precision_vector(int bits, double* out);

/* ---- experiments ---------------------------------------------------------- */

/* Runs the JSON-configured experiment; the summary JSON goes to `summary`. A
 * run that failed is reported in the summary and yields QCQO_ERR_SOLVER. */
QCQO_API qcqo_status qcqo_experiment_run(const char* config_json, char* summary, size_t capacity,
                                         size_t* needed);
/* Validates a config and returns it normalized (defaults filled in). */
QCQO_API qcqo_status qcqo_experiment_normalize(const char* config_json, char* out,
                                               size_t capacity, size_t* needed);
QCQO_API qcqo_status qcqo_experiment_diagnose(const char* config_json, const char* csv_path);
QCQO_API qcqo_status qcqo_qubit_table(size_t d, const double* epsilons, size_t count, size_t n,
                                      char* out, size_t capacity, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* QCQO_QCQO_H */
