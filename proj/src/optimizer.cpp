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

#include "qcqo/optimizer.hpp"

#include <functional>
#include <numeric>
#include <string>

#include "qcqo/error.hpp"

namespace qcqo {

QuboInstance build_qubo(const QuadraticProgram& qp, const Vector& w, const UpdateMatrix& r) {
    if (r.rows.cols() != qp.dim() || w.size() != qp.dim()) {
        throw DimensionError("build_qubo: R is " + std::to_string(r.rows.rows()) + "x" +
                             std::to_string(r.rows.cols()) + ", w has " + std::to_string(w.size()) +
                             " entries, program dimension is " + std::to_string(qp.dim()));
    }
    Matrix q = r.rows * qp.curvature() * r.rows.transpose();
    q.diagonal() += r.rows * qp.gradient(w);
    return QuboInstance(q);
}

StepNormWindow::StepNormWindow(std::size_t capacity) : values_(capacity, 0.0) {
    if (capacity == 0) throw InvalidArgument("step window size must be at least 1");
}

void StepNormWindow::push(double norm) {
    values_[next_] = norm;
    next_ = (next_ + 1) % values_.size();
    if (filled_ < values_.size()) ++filled_;
}

double StepNormWindow::mean() const {
    if (filled_ == 0) return 0.0;
    // Sum in insertion order so the result does not depend on the ring offset.
    double sum = 0.0;
    const std::size_t start = filled_ < values_.size() ? 0 : next_;
    for (std::size_t k = 0; k < filled_; ++k) sum += values_[(start + k) % values_.size()];
    return sum / static_cast<double>(filled_);
}

OptimizerState initial_state(const QuadraticProgram& qp, const Vector& w0, double sigma,
                             std::size_t window) {
    if (!(sigma > 0.0)) throw InvalidArgument("sigma must be positive");
    return OptimizerState{w0, qp.loss(w0), 0, StepNormWindow(window), sigma};
}

void StoppingRule::validate() const {
    if (!max_iterations && !loss_threshold && !max_wall_time) {
        throw InvalidArgument("stopping rule: at least one criterion must be set");
    }
}

StepOutcome step(const QuadraticProgram& qp, const OptimizerState& state, const RowSampler& sampler,
                 const QuboSolver& solver, Seed seed) {
    if (state.w.size() != qp.dim() || sampler.dim() != qp.dim()) {
        throw DimensionError("step: state, sampler and program dimensions disagree");
    }
    const UpdateMatrix r = sampler.sample(derive_seed(seed, 0));
    const QuboInstance q = build_qubo(qp, state.w, r);
    SolveResult solved = solver.solve(q, derive_seed(seed, 1));
    const double energy = q.energy(solved.z);

    StepOutcome out{state, {}};
    IterationRecord& rec = out.record;
    rec.t = state.t + 1;
    rec.sigma = state.sigma;

    Vector u = Vector::Zero(qp.dim());
    double new_loss = state.loss;
    if (energy <= 0.0) {
        for (Eigen::Index i = 0; i < r.rows.rows(); ++i) {
            if (solved.z[i]) u += r.rows.row(i).transpose();
        }
        Vector w_next = state.w + u;
        new_loss = qp.loss(w_next);
        if (new_loss <= state.loss) {
            out.state.w = std::move(w_next);
            rec.qubo_energy = energy;
        } else {
            u.setZero();
            new_loss = state.loss;
            rec.guarded = true;
        }
    } else {
        rec.guarded = true;
    }
    out.state.loss = new_loss;
    out.state.t = state.t + 1;
    rec.step_norm = u.norm();
    out.state.window.push(rec.step_norm);
    rec.loss = new_loss;
    rec.step = std::move(u);
    return out;
}

namespace {

using SigmaRule = std::function<double(const OptimizerState&)>;

RunResult run_loop(const QuadraticProgram& qp, const Vector& w0, Eigen::Index n,
                   std::size_t window, const SigmaRule& sigma_for, const QuboSolver& solver,
                   const StoppingRule& stop, Seed seed, const std::optional<Vector>& optimum) {
    stop.validate();
    if (w0.size() != qp.dim()) throw DimensionError("initial point has the wrong dimension");
    if (n < 1) throw InvalidArgument("number of QUBO variables must be at least 1");
    if (optimum && optimum->size() != qp.dim()) {
        throw DimensionError("reference optimum has the wrong dimension");
    }

    OptimizerState state = initial_state(qp, w0, 1.0, window);
    RunResult result{w0, {}};
    result.trajectory.initial_point = w0;
    result.trajectory.initial_loss = state.loss;
    if (optimum) result.trajectory.initial_distance = (w0 - *optimum).norm();

    const auto started = std::chrono::steady_clock::now();
    for (;;) {
        if (stop.max_iterations && state.t >= *stop.max_iterations) break;
        if (stop.loss_threshold && state.loss <= *stop.loss_threshold) break;
        if (stop.max_wall_time &&
            std::chrono::steady_clock::now() - started >= *stop.max_wall_time) {
            break;
        }
        state.sigma = sigma_for(state);
        const RowSampler sampler = RowSampler::for_target_step(state.sigma, n, qp.dim());
        StepOutcome out = step(qp, state, sampler, solver, derive_seed(seed, state.t));
        if (optimum) out.record.distance_to_optimum = (out.state.w - *optimum).norm();
        result.trajectory.records.push_back(std::move(out.record));
        state = std::move(out.state);
    }
    result.w = state.w;
    return result;
}

}  // namespace

RunResult run_fixed(const QuadraticProgram& qp, const Vector& w0, double sigma, Eigen::Index n,
                    const QuboSolver& solver, const StoppingRule& stop, Seed seed,
                    const std::optional<Vector>& optimum) {
    if (!(sigma > 0.0)) throw InvalidArgument("run_fixed: sigma must be positive");
    return run_loop(
        qp, w0, n, 1, [sigma](const OptimizerState&) { return sigma; }, solver, stop, seed,
        optimum);
}

RunResult run_adaptive(const QuadraticProgram& qp, const Vector& w0, Eigen::Index n,
                       std::size_t window, const QuboSolver& solver, const StoppingRule& stop,
                       Seed seed, const std::optional<Vector>& optimum) {
    if (window < 1) throw InvalidArgument("run_adaptive: window size must be at least 1");
    return run_loop(
        qp, w0, n, window,
        [window](const OptimizerState& s) {
            if (s.t > window) return std::max(s.window.mean(), kSigmaFloor);
            return 1.0;
        },
        solver, stop, seed, optimum);
}

}  // namespace qcqo
