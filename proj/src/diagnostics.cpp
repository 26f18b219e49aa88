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

#include "qcqo/diagnostics.hpp"

#include <cstdio>
#include <ostream>

#include "qcqo/error.hpp"

namespace qcqo {

std::vector<DiagnosticsRow> convergence_diagnostics(const QuadraticProgram& qp,
                                                    const Trajectory& trajectory,
                                                    const Vector& optimum) {
    if (optimum.size() != qp.dim() || trajectory.initial_point.size() != qp.dim()) {
        throw DimensionError("diagnostics: optimum or trajectory has the wrong dimension");
    }
    const double lambda_min = qp.min_eigenvalue();
    if (lambda_min < -1e-9) {
        throw NotConvexError("diagnostics require a convex program; smallest eigenvalue is " +
                             std::to_string(lambda_min));
    }
    const double lipschitz = qp.spectral_norm();
    const double optimal_loss = qp.loss(optimum);
    const double dist0 = (trajectory.initial_point - optimum).norm();

    std::vector<DiagnosticsRow> rows;
    rows.reserve(trajectory.records.size());
    Vector w = trajectory.initial_point;
    double sum = 0.0;
    double sum_half = 0.0;
    for (const IterationRecord& rec : trajectory.records) {
        const Vector aw = qp.curvature() * w;
        const Vector eps = rec.step + lipschitz * (2.0 * aw + qp.linear());
        const Vector eps_half = rec.step + lipschitz * (aw + qp.linear());

        DiagnosticsRow row;
        row.t = rec.t;
        row.residual_norm = eps.norm();
        row.correction = eps.dot(rec.step);
        row.residual_norm_half = eps_half.norm();
        row.correction_half = eps_half.dot(rec.step);
        sum += row.correction;
        sum_half += row.correction_half;

        w += rec.step;
        const double t = static_cast<double>(rec.t);
        row.gap = qp.loss(w) - optimal_loss;
        row.bound = lipschitz * dist0 / (2.0 * t) + sum / t;
        row.bound_squared_distance = lipschitz * dist0 * dist0 / (2.0 * t) + sum / t;
        row.bound_half = lipschitz * dist0 / (2.0 * t) + sum_half / t;
        rows.push_back(row);
    }
    return rows;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRow>& rows) {
    out << "t,gap,residual_norm,correction,residual_norm_half,correction_half,bound,"
           "bound_squared_distance,bound_half\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%llu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                      static_cast<unsigned long long>(r.t), r.gap, r.residual_norm, r.correction,
                      r.residual_norm_half, r.correction_half, r.bound, r.bound_squared_distance,
                      r.bound_half);
        out << buf;
    }
}

}  // namespace qcqo
