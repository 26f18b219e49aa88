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

#include "qcqo/qubo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "qcqo/error.hpp"

namespace qcqo {

QuboInstance::QuboInstance(const Matrix& weights) {
    if (weights.rows() != weights.cols()) throw DimensionError("QUBO weight matrix must be square");
    if (weights.rows() < 1) throw DimensionError("QUBO must have at least one variable");
    weights_ = symmetrize(weights);
}

double QuboInstance::energy(const BinaryVector& z) const {
    const Eigen::Index n = size();
    if (static_cast<Eigen::Index>(z.size()) != n) {
        throw DimensionError("energy: expected " + std::to_string(n) + " binary entries, got " +
                             std::to_string(z.size()));
    }
    for (auto v : z) {
        if (v > 1) throw InvalidArgument("energy: assignment has a non-binary entry");
    }
    double e = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!z[i]) continue;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (z[j]) e += weights_(i, j);
        }
    }
    return e;
}

void write_qubo(std::ostream& out, const QuboInstance& q) {
    const Eigen::Index n = q.size();
    out << n << '\n';
    char buf[64];
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = q.weights()(i, j);
            if (v == 0.0) continue;
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << i << ' ' << j << ' ' << buf << '\n';
        }
    }
}

QuboInstance read_qubo(std::istream& in) {
    long long n = 0;
    if (!(in >> n) || n < 1) throw ParseError("QUBO dump: missing or invalid size line");
    Matrix q = Matrix::Zero(n, n);
    std::string line;
    std::getline(in, line);
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        long long i = -1, j = -1;
        double v = 0.0;
        if (!(ls >> i >> j >> v) || i < 0 || j < 0 || i >= n || j >= n) {
            throw ParseError("QUBO dump: malformed entry on line " + std::to_string(lineno));
        }
        q(i, j) = v;
        q(j, i) = v;
    }
    return QuboInstance(q);
}

void SAParams::validate() const {
    if (reads == 0) throw InvalidArgument("SA: reads must be positive");
    if (sweeps == 0) throw InvalidArgument("SA: sweeps must be positive");
    if (t_initial && !(*t_initial > 0.0)) throw InvalidArgument("SA: initial temperature must be positive");
    if (t_final && !(*t_final > 0.0)) throw InvalidArgument("SA: final temperature must be positive");
    if (t_initial && t_final && !(*t_initial > *t_final)) {
        throw InvalidArgument("SA: temperature bounds must be strictly decreasing");
    }
}

namespace {

BinaryVector bits_of(std::uint64_t index, Eigen::Index n) {
    BinaryVector z(n);
    for (Eigen::Index i = 0; i < n; ++i) z[i] = static_cast<std::uint8_t>((index >> i) & 1U);
    return z;
}

// Energy change of flipping bit i, given field h = Qz (self term included).
inline double flip_delta(double qii, double hi, bool set) {
    return set ? -(2.0 * hi - qii) : (qii + 2.0 * hi);
}

}  // namespace

// Enumeration is split into a block of low bits (inner Gray code, O(1) per
// state from a precomputed energy table plus an incrementally updated linear
// coupling) and a block of high bits (outer Gray code, O(n) per step).
SolveResult solve_exhaustive(const QuboInstance& q, int max_variables) {
    const Eigen::Index n = q.size();
    if (max_variables > 62) max_variables = 62;
    if (n > max_variables) {
        throw SizeError("exhaustive solver: " + std::to_string(n) + " variables exceed the cap of " +
                        std::to_string(max_variables));
    }
    const Matrix& Q = q.weights();
    const int low = static_cast<int>(std::min<Eigen::Index>(n, 12));
    const int high = static_cast<int>(n) - low;
    const std::uint64_t inner_count = 1ULL << low;
    const std::uint64_t outer_count = 1ULL << high;

    // Inner table in Gray order: energy of the low block alone.
    std::vector<double> low_energy(inner_count);
    std::vector<std::uint8_t> flip_bit(inner_count, 0);
    std::vector<double> flip_sign(inner_count, 0.0);
    std::vector<std::uint32_t> low_code(inner_count, 0);
    {
        std::vector<double> field(low, 0.0);
        std::uint32_t code = 0;
        double e = 0.0;
        low_energy[0] = 0.0;
        for (std::uint64_t k = 1; k < inner_count; ++k) {
            const int bit = std::countr_zero(k);
            const bool set = (code >> bit) & 1U;
            e += flip_delta(Q(bit, bit), field[bit], set);
            const double s = set ? -1.0 : 1.0;
            for (int j = 0; j < low; ++j) field[j] += s * Q(j, bit);
            code ^= 1U << bit;
            low_energy[k] = e;
            flip_bit[k] = static_cast<std::uint8_t>(bit);
            flip_sign[k] = s;
            low_code[k] = code;
        }
    }

    std::vector<double> coupling(low, 0.0);      // 2·Σ_h Q_ih z_h for low bits i
    std::vector<double> high_field(high, 0.0);  // Σ_h' Q_hh' z_h' over high bits
    double high_energy = 0.0;
    std::uint64_t high_code = 0;

    double best = std::numeric_limits<double>::infinity();
    std::uint64_t best_index = 0;

    for (std::uint64_t m = 0; m < outer_count; ++m) {
        if (m > 0) {
            const int hb = std::countr_zero(m);
            const int gb = low + hb;
            const bool set = (high_code >> hb) & 1U;
            high_energy += flip_delta(Q(gb, gb), high_field[hb], set);
            const double s = set ? -1.0 : 1.0;
            for (int h = 0; h < high; ++h) high_field[h] += s * Q(low + h, gb);
            for (int i = 0; i < low; ++i) coupling[i] += 2.0 * s * Q(i, gb);
            high_code ^= 1ULL << hb;
        }
        const std::uint64_t prefix = high_code << low;
        double lin = 0.0;
        double v = high_energy + low_energy[0];
        if (v < best || (v == best && prefix < best_index)) {
            best = v;
            best_index = prefix;
        }
        for (std::uint64_t k = 1; k < inner_count; ++k) {
            lin += flip_sign[k] * coupling[flip_bit[k]];
            v = high_energy + low_energy[k] + lin;
            if (v <= best) {
                const std::uint64_t idx = prefix | low_code[k];
                if (v < best || idx < best_index) {
                    best = v;
                    best_index = idx;
                }
            }
        }
    }

    SolveResult result;
    result.z = bits_of(best_index, n);
    result.energy = q.energy(result.z);
    result.solver_id = "exhaustive";
    result.num_evaluations = inner_count * outer_count;
    return result;
}

SolveResult solve_sa(const QuboInstance& q, const SAParams& params, Seed seed) {
    params.validate();
    const Eigen::Index n = q.size();
    const Matrix& Q = q.weights();

    SolveResult result;
    result.solver_id = "sa";
    result.num_evaluations =
        static_cast<std::uint64_t>(params.reads) * params.sweeps * static_cast<std::uint64_t>(n);

    double max_abs = 0.0;
    double min_nonzero = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double a = std::abs(Q(i, j));
            max_abs = std::max(max_abs, a);
            if (a > 0.0) min_nonzero = std::min(min_nonzero, a);
        }
    }
    if (max_abs == 0.0 && !(params.t_initial && params.t_final)) {
        // Every assignment has zero energy.
        result.z.assign(n, 0);
        result.energy = 0.0;
        return result;
    }
    const double t_init = params.t_initial.value_or(max_abs);
    const double t_final = params.t_final.value_or(1e-3 * min_nonzero);
    if (!(t_init > t_final) || !(t_final > 0.0)) {
        throw InvalidArgument("SA: temperature bounds must be strictly decreasing and positive");
    }
    const double ratio =
        params.sweeps > 1 ? std::pow(t_final / t_init, 1.0 / (params.sweeps - 1)) : 1.0;

    double best_energy = std::numeric_limits<double>::infinity();
    BinaryVector z(n), read_best(n);
    Vector field(n);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);

    for (std::uint32_t r = 0; r < params.reads; ++r) {
        Engine rng = make_engine(derive_seed(seed, r));
        for (Eigen::Index i = 0; i < n; ++i) z[i] = static_cast<std::uint8_t>(rng() >> 63);
        field.setZero();
        for (Eigen::Index i = 0; i < n; ++i) {
            if (z[i]) field += Q.col(i);
        }
        double e = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (z[i]) e += field[i];
        }
        double read_best_energy = e;
        read_best = z;

        double temperature = t_init;
        for (std::uint32_t s = 0; s < params.sweeps; ++s, temperature *= ratio) {
            for (Eigen::Index i = 0; i < n; ++i) {
                const bool set = z[i] != 0;
                const double delta = flip_delta(Q(i, i), field[i], set);
                if (delta > 0.0 && uniform(rng) >= std::exp(-delta / temperature)) continue;
                z[i] = set ? 0 : 1;
                e += delta;
                if (set) {
                    field -= Q.col(i);
                } else {
                    field += Q.col(i);
                }
                if (e < read_best_energy) {
                    read_best_energy = e;
                    read_best = z;
                }
            }
        }
        const double exact = q.energy(read_best);
        if (exact < best_energy) {
            best_energy = exact;
            result.z = read_best;
        }
    }
    result.energy = best_energy;
    return result;
}

ExhaustiveSolver::ExhaustiveSolver(int max_variables) : max_variables_(max_variables) {
    if (max_variables < 1) throw InvalidArgument("exhaustive solver: cap must be positive");
}

SolveResult ExhaustiveSolver::solve(const QuboInstance& q, Seed) const {
    return solve_exhaustive(q, max_variables_);
}

AnnealingSolver::AnnealingSolver(SAParams params) : params_(params) { params_.validate(); }

SolveResult AnnealingSolver::solve(const QuboInstance& q, Seed seed) const {
    return solve_sa(q, params_, seed);
}

}  // namespace qcqo
