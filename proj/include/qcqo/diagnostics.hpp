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

#include <iosfwd>
#include <vector>

#include "qcqo/optimizer.hpp"

namespace qcqo {

/// Per-iteration convergence report for a convex program. Row t describes
/// the iterate w_t and the step u_{t-1} that produced it.
///
/// The step is decomposed as u = −‖A‖₂·g + ε in two ways: with the true
/// gradient g = 2Aw + a (`residual_*`) and with g = Aw + a (`*_half`). The
/// running bound is ‖A‖₂·D/(2t) + (1/t)·Σ εᵀu with D = ‖w₀ − w*‖₂
/// (`bound`) and with D squared (`bound_squared_distance`). Nothing here is
/// asserted; the columns are for inspection.
struct DiagnosticsRow {
    std::uint64_t t = 0;
    double gap = 0.0;
    double residual_norm = 0.0;
    double correction = 0.0;
    double residual_norm_half = 0.0;
    double correction_half = 0.0;
    double bound = 0.0;
    double bound_squared_distance = 0.0;
    double bound_half = 0.0;
};

/// Throws NotConvexError when the smallest eigenvalue of A is below −1e-9.
std::vector<DiagnosticsRow> convergence_diagnostics(const QuadraticProgram& qp,
                                                    const Trajectory& trajectory,
                                                    const Vector& optimum);

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRow>& rows);

}  // namespace qcqo
