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

#include "qcqo/linreg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "qcqo/error.hpp"

namespace qcqo {

RegressionDataset::RegressionDataset(Matrix features, Vector targets,
                                     std::optional<Vector> true_weights, std::optional<Seed> seed)
    : features_(std::move(features)),
      targets_(std::move(targets)),
      true_weights_(std::move(true_weights)),
      seed_(seed) {
    if (features_.cols() < 1) throw DimensionError("dataset needs at least one feature column");
    if (features_.rows() != targets_.size()) {
        throw DimensionError("dataset has " + std::to_string(features_.rows()) + " rows but " +
                             std::to_string(targets_.size()) + " targets");
    }
    if (features_.rows() < features_.cols()) {
        throw DimensionError("dataset needs at least as many samples as features");
    }
    if (true_weights_ && true_weights_->size() != features_.cols()) {
        throw DimensionError("ground-truth weights have the wrong dimension");
    }
    const Eigen::Index bias = features_.cols() - 1;
    for (Eigen::Index i = 0; i < features_.rows(); ++i) {
        if (features_(i, bias) != 1.0) {
            throw InvalidArgument("last feature column must be all ones (fused bias), row " +
                                  std::to_string(i) + " differs");
        }
    }
}

double mse(const RegressionDataset& ds, const Vector& w) {
    if (w.size() != ds.dim()) throw DimensionError("mse: weight vector has the wrong dimension");
    return (ds.features() * w - ds.targets()).squaredNorm() / static_cast<double>(ds.samples());
}

QuadraticProgram to_quadratic_program(const RegressionDataset& ds) {
    const double inv_n = 1.0 / static_cast<double>(ds.samples());
    Matrix gram = Matrix::Zero(ds.dim(), ds.dim());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(ds.features().transpose(), inv_n);
    gram.triangularView<Eigen::StrictlyUpper>() = gram.transpose();
    Vector linear = (-2.0 * inv_n) * (ds.features().transpose() * ds.targets());
    return QuadraticProgram(gram, std::move(linear), inv_n * ds.targets().squaredNorm());
}

RegressionDataset generate_synthetic(const SyntheticOptions& opts, Seed seed) {
    if (opts.dim < 2) throw InvalidArgument("synthetic data needs d >= 2");
    if (opts.samples < 1) throw InvalidArgument("synthetic data needs N >= 1");
    if (!(opts.target_norm > 0.0)) throw InvalidArgument("target norm must be positive");
    if (opts.noise_std < 0.0) throw InvalidArgument("noise level must be non-negative");

    const Eigen::Index d = opts.dim;
    Engine rng = make_engine(seed);
    std::normal_distribution<double> normal;

    Vector w(d);
    for (Eigen::Index j = 0; j < d; ++j) w[j] = normal(rng);
    w *= opts.target_norm / w.norm();

    const double feature_std = std::sqrt(static_cast<double>(d));
    Matrix x(opts.samples, d);
    for (Eigen::Index i = 0; i < opts.samples; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) x(i, j) = feature_std * normal(rng);
    }
    x.col(d - 1).setOnes();

    Vector y = x * w;
    if (opts.noise_std > 0.0) {
        for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += opts.noise_std * normal(rng);
    }
    return RegressionDataset(std::move(x), std::move(y), std::move(w), seed);
}

Vector closed_form_optimum(const RegressionDataset& ds) {
    const Matrix& x = ds.features();
    Matrix gram = Matrix::Zero(ds.dim(), ds.dim());
    gram.selfadjointView<Eigen::Lower>().rankUpdate(x.transpose());
    const Vector rhs = x.transpose() * ds.targets();

    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram.selfadjointView<Eigen::Lower>());
    const double top = eig.eigenvalues().maxCoeff();
    const double bottom = eig.eigenvalues().minCoeff();
    if (!(top > 0.0) || bottom <= 1e-12 * top) {
        throw SingularError("normal equations are rank deficient (eigenvalue ratio " +
                            std::to_string(top > 0.0 ? bottom / top : 0.0) + ")");
    }
    Eigen::LLT<Matrix, Eigen::Lower> llt(gram);
    if (llt.info() == Eigen::Success) return llt.solve(rhs);
    // Cholesky can still break down on a barely-PD Gram matrix.
    return eig.eigenvectors() *
           (eig.eigenvalues().cwiseInverse().asDiagonal() * (eig.eigenvectors().transpose() * rhs));
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ParseError(where + ": '" + text + "' is not a number");
    }
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, sep)) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        out.push_back(field);
    }
    return out;
}

}  // namespace

void save_dataset(const RegressionDataset& ds, const std::string& csv_path) {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + csv_path + "' for writing");
    for (Eigen::Index j = 0; j < ds.dim(); ++j) out << 'x' << j + 1 << ',';
    out << "y\n";
    for (Eigen::Index i = 0; i < ds.samples(); ++i) {
        for (Eigen::Index j = 0; j < ds.dim(); ++j) out << format_double(ds.features()(i, j)) << ',';
        out << format_double(ds.targets()[i]) << '\n';
    }
    if (!out) throw IoError("failed writing '" + csv_path + "'");

    if (!ds.true_weights()) return;
    std::ofstream meta(csv_path + ".meta", std::ios::binary);
    if (!meta) throw IoError("cannot open '" + csv_path + ".meta' for writing");
    meta << "d=" << ds.dim() << "\nN=" << ds.samples() << '\n';
    if (ds.seed()) meta << "seed=" << *ds.seed() << '\n';
    meta << "w_true=";
    for (Eigen::Index j = 0; j < ds.dim(); ++j) {
        meta << (j ? "," : "") << format_double((*ds.true_weights())[j]);
    }
    meta << '\n';
}

RegressionDataset load_dataset(const std::string& csv_path) {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) throw IoError("cannot open dataset '" + csv_path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(csv_path + ": empty file");
    const auto header = split(line, ',');
    if (header.size() < 2 || header.back() != "y") {
        throw ParseError(csv_path + ": header must be x1,...,xd,y");
    }
    const std::size_t d = header.size() - 1;
    for (std::size_t j = 0; j < d; ++j) {
        if (header[j] != "x" + std::to_string(j + 1)) {
            throw ParseError(csv_path + ": unexpected header column '" + header[j] + "'");
        }
    }

    std::vector<double> values;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split(line, ',');
        const std::string where = csv_path + ":" + std::to_string(rows + 2);
        if (fields.size() != d + 1) throw ParseError(where + ": expected " + std::to_string(d + 1) + " fields");
        for (const auto& f : fields) values.push_back(parse_double(f, where));
        ++rows;
    }
    Matrix x(rows, d);
    Vector y(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < d; ++j) x(i, j) = values[i * (d + 1) + j];
        y[i] = values[i * (d + 1) + d];
    }

    std::optional<Vector> truth;
    std::optional<Seed> seed;
    const std::string meta_path = csv_path + ".meta";
    if (std::filesystem::exists(meta_path)) {
        std::ifstream meta(meta_path);
        while (std::getline(meta, line)) {
            const auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = line.substr(0, eq);
            std::string value = line.substr(eq + 1);
            while (!value.empty() && value.back() == '\r') value.pop_back();
            if (key == "seed") {
                seed = std::stoull(value);
            } else if (key == "w_true") {
                const auto parts = split(value, ',');
                Vector w(parts.size());
                for (std::size_t j = 0; j < parts.size(); ++j) w[j] = parse_double(parts[j], meta_path);
                truth = std::move(w);
            } else if (key == "d" && std::stoul(value) != d) {
                throw ParseError(meta_path + ": d does not match the CSV");
            } else if (key == "N" && std::stoul(value) != rows) {
                throw ParseError(meta_path + ": N does not match the CSV");
            }
        }
    }
    return RegressionDataset(std::move(x), std::move(y), std::move(truth), seed);
}

double PrecisionEncoding::resolution() const {
    return 0.5 / (std::ldexp(1.0, bits) - 1.0);
}

PrecisionEncoding precision_vector(int bits) {
    if (bits < 1 || bits > 52) throw InvalidArgument("precision vector needs 1 <= k <= 52 bits");
    const double denom = std::ldexp(1.0, bits) - 1.0;
    PrecisionEncoding enc{bits, Vector(bits)};
    for (int i = 0; i < bits; ++i) enc.weights[i] = std::ldexp(1.0, i) / denom;
    return enc;
}

int min_bits(double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidArgument("min_bits: epsilon must be positive");
    // 2^k ≥ 1/(2ε) + 1  ⟺  (2^k − 1)·2ε ≥ 1; the slack absorbs rounding of ε
    // at exact powers of two such as ε = 1/510.
    int k = 1;
    while ((std::ldexp(1.0, k) - 1.0) * 2.0 * epsilon < 1.0 - 1e-12) ++k;
    return k;
}

}  // namespace qcqo
