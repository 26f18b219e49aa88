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

#include "qcqo/quad_model.hpp"
#include "qcqo/rng.hpp"

namespace qcqo {

/// n×d matrix whose rows are the candidate summands of an update step Rᵀz.
struct UpdateMatrix {
    Matrix rows;
};

/// Moments of the z-averaged update step ū = ½·1ᵀR.
struct StepMoments {
    Vector mean;
    Matrix covariance;
};

/// Draws n×d update matrices whose rows are i.i.d. N(mu, row_variance·I_d).
class RowSampler {
public:
    RowSampler(Eigen::Index rows, Vector mean, double row_variance);

    /// Zero-mean sampler whose z-averaged update step has covariance σ·I_d:
    /// rows are drawn with variance 4σ/n.
    static RowSampler for_target_step(double sigma, Eigen::Index rows, Eigen::Index dim);

    Eigen::Index rows() const noexcept { return rows_; }
    Eigen::Index dim() const noexcept { return mean_.size(); }
    const Vector& mean() const noexcept { return mean_; }
    double row_variance() const noexcept { return row_variance_; }

    UpdateMatrix sample(Seed seed) const;

    /// Closed form: mean (n/2)·mu, covariance (n/4)·ς·I_d.
    StepMoments expected_step_moments() const;

private:
    Eigen::Index rows_;
    Vector mean_;
    double row_variance_;
};

/// ū(R) = ½·Σ_i R_i, the exact average of Rᵀz over uniform z ∈ {0,1}ⁿ.
Vector average_step(const UpdateMatrix& r);

}  // namespace qcqo
