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

#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "qcqo/error.hpp"
#include "qcqo/qubo.hpp"

using namespace qcqo;

namespace {

Matrix to_eigen(const oracle::Mat& m) {
    Matrix out(m.size(), m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) out(i, j) = m[i][j];
    return out;
}

oracle::Mat symmetric_random(std::size_t n, std::mt19937_64& rng) {
    auto m = oracle::random_matrix(n, n, rng);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) m[i][j] = m[j][i];
    return m;
}

BinaryVector bits(std::uint64_t v, std::size_t n) {
    BinaryVector z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = (v >> i) & 1;
    return z;
}

std::uint64_t index_of(const BinaryVector& z) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < z.size(); ++i) v |= static_cast<std::uint64_t>(z[i]) << i;
    return v;
}

}  // namespace

TEST_CASE("energy examples") {
    std::mt19937_64 rng(1);
    QuboInstance any(to_eigen(symmetric_random(4, rng)));
    CHECK(any.energy(BinaryVector(4, 0)) == 0.0);

    QuboInstance id(Matrix::Identity(3, 3));
    CHECK(id.energy({1, 1, 0}) == 2.0);

    Matrix q(2, 2);
    q << 1, -2, -2, 1;
    CHECK(QuboInstance(q).energy({1, 1}) == -2.0);

    CHECK_THROWS_AS(id.energy({1, 0}), DimensionError);
    CHECK_THROWS_AS(id.energy({1, 2, 0}), InvalidArgument);
    CHECK_THROWS_AS(QuboInstance(Matrix(2, 3)), DimensionError);
}

TEST_CASE("energy agrees with the entry-wise double sum") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + trial % 10;
        const auto raw = oracle::random_matrix(n, n, rng);  // not symmetric
        QuboInstance q(to_eigen(raw));
        for (std::uint64_t b = 0; b < (1ULL << n); b += 1 + n) {
            CHECK(q.energy(bits(b, n)) ==
                  doctest::Approx(oracle::qubo_energy(raw, b)).epsilon(1e-12).scale(1.0));
        }
    }
}

TEST_CASE("exhaustive solver on diagonal instances") {
    Matrix neg = -Matrix::Identity(2, 2);
    auto r = solve_exhaustive(QuboInstance(neg));
    CHECK(r.z == BinaryVector{1, 1});
    CHECK(r.energy == -2.0);

    auto p = solve_exhaustive(QuboInstance(Matrix::Identity(2, 2)));
    CHECK(p.z == BinaryVector{0, 0});
    CHECK(p.energy == 0.0);
    CHECK(p.solver_id == "exhaustive");
    CHECK(p.num_evaluations == 4);
}

TEST_CASE("exhaustive solver is a true argmin") {
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 16; ++n) {
        const auto q = symmetric_random(n, rng);
        const auto r = solve_exhaustive(QuboInstance(to_eigen(q)));
        CHECK(r.energy == doctest::Approx(oracle::brute_force_min(q)).epsilon(1e-12).scale(1.0));
        CHECK(r.energy == QuboInstance(to_eigen(q)).energy(r.z));
    }
}

TEST_CASE("exhaustive solver beats random sampling on n = 12") {
    std::mt19937_64 rng(4);
    const auto q = symmetric_random(12, rng);
    const auto r = solve_exhaustive(QuboInstance(to_eigen(q)));
    std::uniform_int_distribution<std::uint64_t> pick(0, (1ULL << 12) - 1);
    for (int k = 0; k < 10000; ++k) CHECK(r.energy <= oracle::qubo_energy(q, pick(rng)) + 1e-12);
}

TEST_CASE("exhaustive ties go to the smallest integer encoding") {
    CHECK(solve_exhaustive(QuboInstance(Matrix::Zero(3, 3))).z == BinaryVector{0, 0, 0});

    Matrix q(2, 2);
    q << -1, 1, 1, -1;  // E(1,0) == E(0,1) == -1
    CHECK(solve_exhaustive(QuboInstance(q)).z == BinaryVector{1, 0});

    // Split enumeration path: last variable is free.
    Matrix big = -Matrix::Identity(15, 15);
    big(14, 14) = 0.0;
    const auto r = solve_exhaustive(QuboInstance(big));
    BinaryVector expected(15, 1);
    expected[14] = 0;
    CHECK(r.z == expected);
    CHECK(index_of(r.z) == (1ULL << 14) - 1);
}

TEST_CASE("exhaustive solver enforces its size cap") {
    CHECK_THROWS_AS(solve_exhaustive(QuboInstance(Matrix::Identity(26, 26))), SizeError);
    CHECK_THROWS_AS(solve_exhaustive(QuboInstance(Matrix::Identity(5, 5)), 4), SizeError);
    CHECK_NOTHROW(solve_exhaustive(QuboInstance(Matrix::Identity(5, 5)), 5));
}

TEST_CASE("simulated annealing finds the trivial minimum") {
    Matrix q = Matrix::Zero(6, 6);
    q.diagonal() << 1, 2, 3, 0.5, 4, 1;
    for (Seed s = 0; s < 5; ++s) {
        const auto r = solve_sa(QuboInstance(q), {}, s);
        CHECK(r.z == BinaryVector(6, 0));
        CHECK(r.energy == 0.0);
    }
    CHECK(solve_sa(QuboInstance(Matrix::Zero(3, 3)), {}, 0).z == BinaryVector(3, 0));
}

TEST_CASE("simulated annealing matches the exhaustive optimum on n = 12") {
    std::mt19937_64 rng(5);
    int hits = 0;
    for (int trial = 0; trial < 100; ++trial) {
        QuboInstance q(to_eigen(symmetric_random(12, rng)));
        const auto exact = solve_exhaustive(q);
        const auto sa = solve_sa(q, SAParams{100, 1000, {}, {}}, 1000 + trial);
        CHECK(sa.energy >= exact.energy - 1e-12);
        if (sa.energy <= exact.energy + 1e-9) ++hits;
    }
    CHECK(hits >= 95);
}

TEST_CASE("simulated annealing beats random sampling on n = 64") {
    std::mt19937_64 rng(6);
    const auto raw = symmetric_random(64, rng);
    QuboInstance q(to_eigen(raw));
    const auto sa = solve_sa(q, {}, 99);
    CHECK(sa.energy == q.energy(sa.z));
    std::uniform_int_distribution<std::uint64_t> pick;
    double best_random = 0.0;
    for (int k = 0; k < 10000; ++k) best_random = std::min(best_random, q.energy(bits(pick(rng), 64)));
    CHECK(sa.energy <= best_random);
}

TEST_CASE("simulated annealing parameter validation") {
    QuboInstance q(Matrix::Identity(3, 3));
    CHECK_THROWS_AS(solve_sa(q, SAParams{0, 10, {}, {}}, 0), InvalidArgument);
    CHECK_THROWS_AS(solve_sa(q, SAParams{10, 0, {}, {}}, 0), InvalidArgument);
    CHECK_THROWS_AS(solve_sa(q, SAParams{10, 10, 1.0, 2.0}, 0), InvalidArgument);
    CHECK_THROWS_AS(solve_sa(q, SAParams{10, 10, 1.0, 1.0}, 0), InvalidArgument);
    CHECK_THROWS_AS(solve_sa(q, SAParams{10, 10, -1.0, {}}, 0), InvalidArgument);
    CHECK_THROWS_AS(solve_sa(q, SAParams{10, 10, 1e-6, {}}, 0), InvalidArgument);
    CHECK_THROWS_AS(AnnealingSolver(SAParams{0, 1, {}, {}}), InvalidArgument);
}

TEST_CASE("solvers are deterministic in (instance, params, seed)") {
    std::mt19937_64 rng(7);
    QuboInstance q(to_eigen(symmetric_random(20, rng)));
    const SAParams weak{4, 20, {}, {}};
    const auto a = solve_sa(q, weak, 42);
    const auto b = solve_sa(q, weak, 42);
    CHECK(a.z == b.z);
    CHECK(a.energy == b.energy);
    CHECK(a.num_evaluations == 4ULL * 20 * 20);

    const ExhaustiveSolver ex;
    CHECK(ex.solve(q, 1).z == ex.solve(q, 2).z);
}

TEST_CASE("QUBO dump round-trips and rejects malformed input") {
    std::mt19937_64 rng(8);
    auto raw = symmetric_random(5, rng);
    raw[1][3] = raw[3][1] = 0.0;
    QuboInstance q(to_eigen(raw));
    std::stringstream buf;
    write_qubo(buf, q);
    const std::string text = buf.str();
    CHECK(text.rfind("5\n0 0 ", 0) == 0);
    CHECK(text.find("\n1 3 ") == std::string::npos);
    CHECK(read_qubo(buf).weights() == q.weights());

    std::istringstream bad_size("x\n");
    CHECK_THROWS_AS(read_qubo(bad_size), ParseError);
    std::istringstream bad_index("2\n0 5 1.0\n");
    CHECK_THROWS_AS(read_qubo(bad_index), ParseError);
}
