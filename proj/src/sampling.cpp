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

#include "qcqo/sampling.hpp"

#include <cmath>
#include <random>

#include "qcqo/error.hpp"

namespace qcqo {

RowSampler::RowSampler(Eigen::Index rows, Vector mean, double row_variance)
    : rows_(rows), mean_(std::move(mean)), row_variance_(row_variance) {
    if (rows_ < 1) throw InvalidArgument("RowSampler: need at least one row");
    if (mean_.size() < 1) throw InvalidArgument("RowSampler: dimension must be at least 1");
    if (!(row_variance_ > 0.0) || !std::isfinite(row_variance_)) {
        throw InvalidArgument("RowSampler: row variance must be positive and finite");
    }
}

RowSampler RowSampler::for_target_step(double sigma, Eigen::Index rows, Eigen::Index dim) {
    if (!(sigma > 0.0)) throw InvalidArgument("for_target_step: sigma must be positive");
    if (rows < 1) throw InvalidArgument("for_target_step: need at least one row");
    return RowSampler(rows, Vector::Zero(dim), 4.0 * sigma / static_cast<double>(rows));
}

UpdateMatrix RowSampler::sample(Seed seed) const {
    Engine rng = make_engine(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(row_variance_));
    UpdateMatrix out{Matrix(rows_, dim())};
    for (Eigen::Index i = 0; i < rows_; ++i) {
        for (Eigen::Index j = 0; j < dim(); ++j) out.rows(i, j) = mean_[j] + normal(rng);
    }
    return out;
}

StepMoments RowSampler::expected_step_moments() const {
    const double n = static_cast<double>(rows_);
    return {0.5 * n * mean_, Matrix::Identity(dim(), dim()) * (0.25 * n * row_variance_)};
}

Vector average_step(const UpdateMatrix& r) { return 0.5 * r.rows.colwise().sum().transpose(); }

}  // namespace qcqo
