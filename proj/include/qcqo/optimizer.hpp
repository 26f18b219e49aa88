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

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "qcqo/quad_model.hpp"
#include "qcqo/qubo.hpp"
#include "qcqo/rng.hpp"
#include "qcqo/sampling.hpp"

namespace qcqo {

/// Q(w, R) = sym(RARᵀ) + diag(R(2Aw + a)), so that for every z
/// E_Q(z) = L(w + Rᵀz) − L(w).
QuboInstance build_qubo(const QuadraticProgram& qp, const Vector& w, const UpdateMatrix& r);

/// Ring buffer of the last `capacity` step norms.
class StepNormWindow {
public:
    explicit StepNormWindow(std::size_t capacity = 1);

    void push(double norm);
    double mean() const;
    std::size_t size() const noexcept { return filled_; }
    std::size_t capacity() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
    std::size_t next_ = 0;
    std::size_t filled_ = 0;
};

struct OptimizerState {
    Vector w;
    double loss = 0.0;
    std::uint64_t t = 0;
    StepNormWindow window;
    double sigma = 1.0;
};

/// Starting state at w0; `window` is the step-norm window size.
OptimizerState initial_state(const QuadraticProgram& qp, const Vector& w0, double sigma,
                             std::size_t window = 1);

/// One row per iteration; `t` is the index of the iterate the step produced.
struct IterationRecord {
    std::uint64_t t = 0;
    double loss = 0.0;
    double sigma = 0.0;
    double step_norm = 0.0;
    double qubo_energy = 0.0;  // energy of the applied z (0 after a guarded step)
    bool guarded = false;      // solver output rejected, zero step applied
    std::optional<double> distance_to_optimum;
    Vector step;
};

struct Trajectory {
    Vector initial_point;
    double initial_loss = 0.0;
    std::optional<double> initial_distance;
    std::vector<IterationRecord> records;
};

struct StoppingRule {
    std::optional<std::uint64_t> max_iterations;
    std::optional<double> loss_threshold;
    std::optional<std::chrono::duration<double>> max_wall_time;

    static StoppingRule iterations(std::uint64_t budget) { return {budget, {}, {}}; }
    void validate() const;
};

struct StepOutcome {
    OptimizerState state;
    IterationRecord record;
};

/// One QCQO iteration: sample R, build and solve the QUBO, and apply the
/// zero-step guard (a solver answer with positive energy, or one that would
/// raise the loss through rounding, is replaced by z = 0).
StepOutcome step(const QuadraticProgram& qp, const OptimizerState& state, const RowSampler& sampler,
                 const QuboSolver& solver, Seed seed);

struct RunResult {
    Vector w;
    Trajectory trajectory;
};

/// Lower bound on σ when the adaptive window averages to zero.
inline constexpr double kSigmaFloor = 1e-12;

/// Fixed-distribution loop with rows drawn from N(0, 4σ/n·I). `optimum`, when
/// given, only feeds the distance column.
RunResult run_fixed(const QuadraticProgram& qp, const Vector& w0, double sigma, Eigen::Index n,
                    const QuboSolver& solver, const StoppingRule& stop, Seed seed,
                    const std::optional<Vector>& optimum = std::nullopt);

/// Window-adapted loop: σ = 1 while t ≤ T, afterwards the mean of the last T
/// step norms (zero steps included), floored at kSigmaFloor.
RunResult run_adaptive(const QuadraticProgram& qp, const Vector& w0, Eigen::Index n,
                       std::size_t window, const QuboSolver& solver, const StoppingRule& stop,
                       Seed seed, const std::optional<Vector>& optimum = std::nullopt);

}  // namespace qcqo
