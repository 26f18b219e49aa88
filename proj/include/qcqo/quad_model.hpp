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

#include <Eigen/Core>

namespace qcqo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Returns (M + Mᵀ)/2. Throws DimensionError if M is not square.
Matrix symmetrize(const Matrix& m);

/// Unconstrained quadratic program L(w) = wᵀAw + aᵀw + c over ℝ^d.
///
/// The curvature matrix is symmetrized on construction, so the stored A
/// satisfies A(i,j) == A(j,i) bit-for-bit. Instances are immutable.
class QuadraticProgram {
public:
    QuadraticProgram(const Matrix& curvature, Vector linear, double constant = 0.0);

    Eigen::Index dim() const noexcept { return linear_.size(); }
    const Matrix& curvature() const noexcept { return curvature_; }
    const Vector& linear() const noexcept { return linear_; }
    double constant() const noexcept { return constant_; }

    double loss(const Vector& w) const;

    /// ∇L(w) = 2Aw + a.
    Vector gradient(const Vector& w) const;

    /// ‖A‖₂, computed once by power iteration and cached.
    double spectral_norm() const noexcept { return spectral_norm_; }

    /// Smallest eigenvalue of A (dense symmetric eigensolver).
    double min_eigenvalue() const;

private:
    void check_dim(const Vector& w) const;

    Matrix curvature_;
    Vector linear_;
    double constant_;
    double spectral_norm_;
};

/// Largest singular value of a symmetric matrix by power iteration on A²,
/// stopping once the eigen-residual drops below `rel_tol` relative to the
/// Rayleigh quotient. A zero start vector response triggers a seeded restart.
double spectral_norm(const Matrix& symmetric, double rel_tol = 1e-10);

}  // namespace qcqo
