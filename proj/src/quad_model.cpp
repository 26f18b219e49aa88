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

#include "qcqo/quad_model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

#include "qcqo/error.hpp"
#include "qcqo/rng.hpp"

namespace qcqo {

Matrix symmetrize(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("symmetrize: matrix is " + std::to_string(m.rows()) + "x" +
                             std::to_string(m.cols()) + ", expected square");
    }
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i; j < m.cols(); ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

QuadraticProgram::QuadraticProgram(const Matrix& curvature, Vector linear, double constant)
    : linear_(std::move(linear)), constant_(constant) {
    if (curvature.rows() != curvature.cols()) {
        throw DimensionError("QuadraticProgram: curvature matrix must be square");
    }
    if (curvature.rows() < 1) {
        throw DimensionError("QuadraticProgram: dimension must be at least 1");
    }
    if (curvature.rows() != linear_.size()) {
        throw DimensionError("QuadraticProgram: curvature is " + std::to_string(curvature.rows()) +
                             "-dimensional but linear term has " +
                             std::to_string(linear_.size()) + " entries");
    }
    curvature_ = symmetrize(curvature);
    spectral_norm_ = qcqo::spectral_norm(curvature_);
}

void QuadraticProgram::check_dim(const Vector& w) const {
    if (w.size() != dim()) {
        throw DimensionError("expected a " + std::to_string(dim()) + "-vector, got " +
                             std::to_string(w.size()));
    }
}

double QuadraticProgram::loss(const Vector& w) const {
    check_dim(w);
    // Extended-precision accumulation: near the optimum of a regression
    // problem the three terms cancel to ~1e-10 of their magnitude.
    const Eigen::Index d = dim();
    long double quad = 0.0L;
    long double lin = 0.0L;
    for (Eigen::Index i = 0; i < d; ++i) {
        long double row = 0.0L;
        for (Eigen::Index j = 0; j < d; ++j) {
            row += static_cast<long double>(curvature_(i, j)) * w[j];
        }
        quad += row * w[i];
        lin += static_cast<long double>(linear_[i]) * w[i];
    }
    return static_cast<double>(quad + lin + constant_);
}

Vector QuadraticProgram::gradient(const Vector& w) const {
    check_dim(w);
    return 2.0 * (curvature_ * w) + linear_;
}

double QuadraticProgram::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(curvature_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double spectral_norm(const Matrix& a, double rel_tol) {
    if (a.rows() != a.cols()) throw DimensionError("spectral_norm: matrix must be square");
    const Eigen::Index d = a.rows();
    if (d == 0 || a.cwiseAbs().maxCoeff() == 0.0) return 0.0;

    const Matrix b = a * a;
    Engine rng = make_engine(0x5eed);
    std::normal_distribution<double> normal;

    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v[i] = normal(rng);
    v.normalize();
    constexpr int kMaxRestarts = 8;
    constexpr int kMaxIterations = 1'000'000;
    for (int restart = 0; restart <= kMaxRestarts; ++restart) {
        Vector bv = b * v;
        if (bv.norm() == 0.0) {
            for (Eigen::Index i = 0; i < d; ++i) v[i] = normal(rng);
            v.normalize();
            continue;
        }
        double rho = v.dot(bv);
        for (int it = 0; it < kMaxIterations; ++it) {
            v = bv / bv.norm();
            bv = b * v;
            rho = v.dot(bv);
            if ((bv - rho * v).norm() <= rel_tol * std::abs(rho)) break;
        }
        return std::sqrt(std::max(rho, 0.0));
    }
    return 0.0;
}

}  // namespace qcqo
