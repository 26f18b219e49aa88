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

#include <cstdint>
#include <optional>
#include <string>

#include "qcqo/quad_model.hpp"
#include "qcqo/rng.hpp"

namespace qcqo {

/// Regression data with the bias fused into the last feature column, which is
/// all ones. N ≥ d is required.
class RegressionDataset {
public:
    RegressionDataset(Matrix features, Vector targets, std::optional<Vector> true_weights = {},
                      std::optional<Seed> seed = {});

    Eigen::Index samples() const noexcept { return features_.rows(); }
    Eigen::Index dim() const noexcept { return features_.cols(); }
    const Matrix& features() const noexcept { return features_; }
    const Vector& targets() const noexcept { return targets_; }
    const std::optional<Vector>& true_weights() const noexcept { return true_weights_; }
    const std::optional<Seed>& seed() const noexcept { return seed_; }

private:
    Matrix features_;
    Vector targets_;
    std::optional<Vector> true_weights_;
    std::optional<Seed> seed_;
};

/// (1/N)·‖Xw − y‖².
double mse(const RegressionDataset& ds, const Vector& w);

/// A = XᵀX/N, a = −2Xᵀy/N, c = yᵀy/N; loss equals mse pointwise.
QuadraticProgram to_quadratic_program(const RegressionDataset& ds);

struct SyntheticOptions {
    Eigen::Index dim = 16;
    Eigen::Index samples = 100000;
    double target_norm = 100.0;
    double noise_std = 0.0;
};

/// w ~ N(0, I) rescaled to ‖w‖ = target_norm; rows of X ~ N(0, d·I) with the
/// last column then overwritten by ones; y = Xw (+ optional Gaussian noise).
RegressionDataset generate_synthetic(const SyntheticOptions& opts, Seed seed);

/// Least-squares optimum from the normal equations. Throws SingularError when
/// XᵀX is numerically rank deficient.
Vector closed_form_optimum(const RegressionDataset& ds);

/// CSV with header `x1,...,xd,y` (%.17g). When the dataset carries ground
/// truth, `<path>.meta` is written alongside with keys d, N, seed, w_true.
void save_dataset(const RegressionDataset& ds, const std::string& csv_path);
RegressionDataset load_dataset(const std::string& csv_path);

/// Explicit fixed-point encoding of [0,1] with k bits: p_i = 2^(i-1)/(2^k − 1).
struct PrecisionEncoding {
    int bits = 1;
    Vector weights;

    /// Largest distance from any point of [0,1] to the representable grid.
    double resolution() const;
};

PrecisionEncoding precision_vector(int bits);

/// Smallest k with ⌈log₂(1/(2ε) + 1)⌉ ≤ k, i.e. the fewest bits covering
/// [0,1] to within ε.
int min_bits(double epsilon);

}  // namespace qcqo
