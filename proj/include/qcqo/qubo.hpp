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
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcqo/quad_model.hpp"
#include "qcqo/rng.hpp"

namespace qcqo {

/// Binary assignment z ∈ {0,1}ⁿ; entries other than 0/1 are rejected.
using BinaryVector = std::vector<std::uint8_t>;

/// QUBO instance with symmetric weight matrix Q and energy E_Q(z) = zᵀQz.
class QuboInstance {
public:
    /// Symmetrizes `weights`; throws DimensionError for non-square or empty input.
    explicit QuboInstance(const Matrix& weights);

    Eigen::Index size() const noexcept { return weights_.rows(); }
    const Matrix& weights() const noexcept { return weights_; }

    double energy(const BinaryVector& z) const;

private:
    Matrix weights_;
};

/// Writes the debugging dump: first line `n`, then `i j Q_ij` for every
/// nonzero upper-triangle entry (0-indexed, %.17g).
void write_qubo(std::ostream& out, const QuboInstance& q);
QuboInstance read_qubo(std::istream& in);

struct SolveResult {
    BinaryVector z;
    double energy = 0.0;
    std::string solver_id;
    std::uint64_t num_evaluations = 0;
};

/// Simulated-annealing parameters. Temperature bounds left empty are derived
/// from the instance: T_init = max|Q_ij|, T_final = 1e-3 · min nonzero |Q_ij|.
struct SAParams {
    std::uint32_t reads = 100;
    std::uint32_t sweeps = 1000;
    std::optional<double> t_initial;
    std::optional<double> t_final;

    void validate() const;
};

/// Default hard cap on exhaustive enumeration.
inline constexpr int kExhaustiveMaxVariables = 25;

/// Global minimizer by full enumeration. Ties are broken towards the smallest
/// z read as an unsigned integer with z[0] as least-significant bit.
SolveResult solve_exhaustive(const QuboInstance& q, int max_variables = kExhaustiveMaxVariables);

/// Best of `reads` independent single-flip Metropolis runs with a geometric
/// cooling schedule over `sweeps` sweeps. May return a suboptimal z.
SolveResult solve_sa(const QuboInstance& q, const SAParams& params, Seed seed);

/// Pluggable solver contract used by the optimizer. Implementations must be
/// deterministic in (instance, seed) and safe to call concurrently.
class QuboSolver {
public:
    virtual ~QuboSolver() = default;
    virtual SolveResult solve(const QuboInstance& q, Seed seed) const = 0;
    virtual std::string id() const = 0;
};

class ExhaustiveSolver final : public QuboSolver {
public:
    explicit ExhaustiveSolver(int max_variables = kExhaustiveMaxVariables);
    SolveResult solve(const QuboInstance& q, Seed seed) const override;
    std::string id() const override { return "exhaustive"; }
    int max_variables() const noexcept { return max_variables_; }

private:
    int max_variables_;
};

class AnnealingSolver final : public QuboSolver {
public:
    explicit AnnealingSolver(SAParams params = {});
    SolveResult solve(const QuboInstance& q, Seed seed) const override;
    std::string id() const override { return "sa"; }
    const SAParams& params() const noexcept { return params_; }

private:
    SAParams params_;
};

}  // namespace qcqo
