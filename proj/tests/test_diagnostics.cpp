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

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "qcqo/diagnostics.hpp"
#include "qcqo/error.hpp"
#include "qcqo/linreg.hpp"

using namespace qcqo;

namespace {

QuadraticProgram small_convex() {
    Matrix a(2, 2);
    a << 2, 0.5, 0.5, 1;
    return QuadraticProgram(a, Vector{{-3.0, 1.0}}, 4.0);
}

Vector minimizer(const QuadraticProgram& qp) { return (2.0 * qp.curvature()).inverse() * -qp.linear(); }

}  // namespace

TEST_CASE("gap is zero when the run starts at the optimum") {
    const auto qp = small_convex();
    const Vector opt = minimizer(qp);
    const auto res = run_fixed(qp, opt, 1.0, 6, ExhaustiveSolver(), StoppingRule::iterations(20), 1);
    const auto rows = convergence_diagnostics(qp, res.trajectory, opt);
    REQUIRE(rows.size() == 20);
    for (const auto& r : rows) CHECK(r.gap == 0.0);
}

TEST_CASE("gap column is non-increasing and columns follow their definitions") {
    const auto qp = small_convex();
    const Vector opt = minimizer(qp);
    const auto res = run_fixed(qp, Vector::Zero(2), 0.5, 6, ExhaustiveSolver(),
                               StoppingRule::iterations(30), 2);
    const auto rows = convergence_diagnostics(qp, res.trajectory, opt);
    REQUIRE(rows.size() == 30);
    double prev = qp.loss(Vector::Zero(2)) - qp.loss(opt);
    for (const auto& r : rows) {
        CHECK(r.gap <= prev);
        prev = r.gap;
    }

    const double lip = qp.spectral_norm();
    const Vector w0 = Vector::Zero(2);
    const Vector& u0 = res.trajectory.records[0].step;
    const Vector eps = u0 + lip * qp.gradient(w0);
    const Vector eps_half = u0 + lip * (qp.curvature() * w0 + qp.linear());
    CHECK(rows[0].t == 1);
    CHECK(rows[0].residual_norm == doctest::Approx(eps.norm()));
    CHECK(rows[0].correction == doctest::Approx(eps.dot(u0)));
    CHECK(rows[0].residual_norm_half == doctest::Approx(eps_half.norm()));
    const double d0 = opt.norm();
    CHECK(rows[0].bound == doctest::Approx(lip * d0 / 2.0 + eps.dot(u0)));
    CHECK(rows[0].bound_squared_distance == doctest::Approx(lip * d0 * d0 / 2.0 + eps.dot(u0)));
}

TEST_CASE("diagnostics refuse non-convex programs") {
    Matrix a(2, 2);
    a << 1, 0, 0, -1;
    QuadraticProgram qp(a, Vector::Zero(2));
    const auto res = run_fixed(qp, Vector::Ones(2), 1.0, 4, ExhaustiveSolver(),
                               StoppingRule::iterations(2), 0);
    CHECK_THROWS_AS(convergence_diagnostics(qp, res.trajectory, Vector::Zero(2)), NotConvexError);
}

TEST_CASE("regression smoke run produces a finite report") {
    SyntheticOptions opts;
    opts.samples = 2000;
    const auto ds = generate_synthetic(opts, 3);
    const auto qp = to_quadratic_program(ds);
    const Vector opt = closed_form_optimum(ds);
    const auto res = run_fixed(qp, Vector::Zero(16), 1.0, 12, ExhaustiveSolver(),
                               StoppingRule::iterations(100), 4, opt);
    const auto rows = convergence_diagnostics(qp, res.trajectory, opt);
    REQUIRE(rows.size() == 100);
    for (const auto& r : rows) {
        CHECK(std::isfinite(r.gap));
        CHECK(std::isfinite(r.bound));
        CHECK(std::isfinite(r.bound_half));
        CHECK(r.gap >= -1e-6);
    }
    std::ostringstream csv;
    write_diagnostics_csv(csv, rows);
    const std::string text = csv.str();
    CHECK(text.rfind("t,gap,residual_norm,correction,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 101);
}
