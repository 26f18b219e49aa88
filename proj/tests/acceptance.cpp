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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qcqo/experiment.hpp"
#include "qcqo/linreg.hpp"
#include "qcqo/optimizer.hpp"
#include "qcqo/qubo.hpp"
#include "qcqo/sampling.hpp"

using namespace qcqo;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

template <typename... Args>
std::string format(const char* fmt, Args... args) {
    char buf[1024];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

oracle::Mat to_rows(const Matrix& m) {
    oracle::Mat out = oracle::zeros(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    return out;
}

oracle::Vec to_vec(const Vector& v) { return oracle::Vec(v.data(), v.data() + v.size()); }

Matrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Matrix m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(i, j) = normal(rng);
    return m;
}

Vector random_vector(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> normal;
    Vector v(n);
    for (auto& x : v) x = normal(rng);
    return v;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double loss_at(const Trajectory& tr, std::size_t t) {
    return t == 0 ? tr.initial_loss : tr.records.at(t - 1).loss;
}

bool monotone(const Trajectory& tr, double tol) {
    double prev = tr.initial_loss;
    for (const auto& r : tr.records) {
        if (!(r.loss <= prev + tol)) return false;
        prev = r.loss;
    }
    return true;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// 1. Energy of every z equals the loss change of the corresponding step.
void qubo_faithfulness() {
    const auto start = Clock::now();
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> dim_dist(1, 6), rows_dist(1, 10);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const int d = dim_dist(rng);
        const int n = rows_dist(rng);
        const QuadraticProgram qp(random_matrix(d, d, rng), random_vector(d, rng), random_vector(1, rng)[0]);
        const Vector w = random_vector(d, rng);
        const Matrix r = random_matrix(n, d, rng);
        const auto q = to_rows(build_qubo(qp, w, UpdateMatrix{r}).weights());
        const auto a = to_rows(qp.curvature());
        const auto lin = to_vec(qp.linear());
        const double base = oracle::quadratic(a, lin, qp.constant(), to_vec(w));
        for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
            Vector x = w;
            for (int i = 0; i < n; ++i)
                if ((bits >> i) & 1) x += r.row(i).transpose();
            const double moved = oracle::quadratic(a, lin, qp.constant(), to_vec(x));
            const double scale = std::max({1.0, std::abs(base), std::abs(moved)});
            worst = std::max(worst, std::abs(oracle::qubo_energy(q, bits) - (moved - base)) / scale);
        }
    }
    const double secs = seconds_since(start);
    report(1, "qubo-faithfulness", worst <= 1e-9 && secs < 10.0,
           format("200 cases, worst relative error %.3g (tol 1e-9), %.2f s (limit 10 s)", worst, secs));
}

// 2. Moments of the z-averaged step over 1e5 draws.
void step_moments() {
    const auto start = Clock::now();
    struct Cell { Eigen::Index n, d; double var; };
    const Cell cells[] = {{4, 3, 1.0}, {8, 4, 0.5}, {16, 2, 2.0}};
    std::mt19937_64 rng(202);
    const int draws = 100000;
    bool ok = true;
    std::string detail;
    for (const auto& c : cells) {
        const RowSampler sampler(c.n, random_vector(c.d, rng), c.var);
        const StepMoments expected = sampler.expected_step_moments();
        Vector sum = Vector::Zero(c.d);
        Matrix outer = Matrix::Zero(c.d, c.d);
        for (int i = 0; i < draws; ++i) {
            const Vector u = average_step(sampler.sample(derive_seed(7, i)));
            sum += u;
            outer += u * u.transpose();
        }
        const Vector m = sum / draws;
        const Matrix cov = (outer - draws * m * m.transpose()) / (draws - 1);
        const double mean_err = (m - expected.mean).norm() / expected.mean.norm();
        const double cov_err = (cov - expected.covariance).norm() / expected.covariance.norm();
        ok = ok && mean_err <= 0.05 && cov_err <= 0.05;
        detail += format("(n=%ld,d=%ld,var=%g) mean %.4f cov %.4f; ", static_cast<long>(c.n),
                         static_cast<long>(c.d), c.var, mean_err, cov_err);
    }
    const double secs = seconds_since(start);
    ok = ok && secs < 30.0;
    report(2, "step-moments", ok, detail + format("tol 0.05, %.2f s (limit 30 s)", secs));
}

// 3. Loss never increases under the annealing solver.
void monotone_descent() {
    const auto start = Clock::now();
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> dim_dist(2, 8);
    SAParams sa;
    sa.reads = 10;
    sa.sweeps = 100;
    const AnnealingSolver solver(sa);
    int bad = 0;
    for (int k = 0; k < 100; ++k) {
        const int d = dim_dist(rng);
        const Matrix b = random_matrix(d, d, rng);
        const bool convex = k < 50;
        const Matrix a = convex ? Matrix(b.transpose() * b) : b;
        const QuadraticProgram qp(a, random_vector(d, rng), 0.0);
        const Vector w0 = random_vector(d, rng);
        const auto stop = StoppingRule::iterations(200);
        const RunResult res = convex ? run_adaptive(qp, w0, 12, 10, solver, stop, derive_seed(3, k))
                                     : run_fixed(qp, w0, 1.0, 12, solver, stop, derive_seed(3, k));
        if (!monotone(res.trajectory, 1e-9)) ++bad;
    }
    const double secs = seconds_since(start);
    report(3, "monotone-descent", bad == 0 && secs < 120.0,
           format("50 convex + 50 indefinite programs x 200 iterations, %d non-monotone, %.1f s (limit 120 s)",
                  bad, secs));
}

struct Desk {
    RegressionDataset data;
    QuadraticProgram qp;
    Vector optimum;
};

Desk desk_instance() {
    auto data = generate_synthetic({16, 10000, 100.0, 0.0}, 0);
    auto qp = to_quadratic_program(data);
    auto optimum = closed_form_optimum(data);
    return {std::move(data), std::move(qp), std::move(optimum)};
}

constexpr int kRuns = 10;
constexpr std::uint64_t kIterations = 1000;

using Curves = std::vector<Trajectory>;

// 4. Fixed step-size grid.
std::map<std::pair<double, int>, Curves> fixed_grid(const Desk& desk) {
    const auto start = Clock::now();
    const ExhaustiveSolver solver;
    std::map<std::pair<double, int>, Curves> grid;
    for (double sigma : {0.1, 1.0}) {
        for (int n : {8, 16, 24}) {
            auto& curves = grid[{sigma, n}];
            for (int r = 0; r < kRuns; ++r) {
                curves.push_back(run_fixed(desk.qp, Vector::Zero(16), sigma, n, solver,
                                           StoppingRule::iterations(kIterations), r, desk.optimum)
                                     .trajectory);
            }
        }
    }
    const double secs = seconds_since(start);

    auto mean_at = [&](double sigma, int n, std::size_t t) {
        std::vector<double> v;
        for (const auto& tr : grid[{sigma, n}]) v.push_back(loss_at(tr, t));
        return mean(v);
    };
    auto final_median = [&](double sigma, int n) {
        std::vector<double> v;
        for (const auto& tr : grid[{sigma, n}]) v.push_back(loss_at(tr, kIterations));
        return median(v);
    };

    const double at200 = mean_at(1.0, 16, 200);
    const double final16 = mean_at(1.0, 16, kIterations);
    report(4, "fixed-sigma two-phase (a)", at200 < 1e3 && final16 >= 1.0 && final16 <= 1e4 && secs < 1800.0,
           format("sigma=1 n=16: mean MSE %.4g at t=200 (< 1e3), final %.4g (in [1, 1e4]); grid %.1f s (limit 1800 s)",
                  at200, final16, secs));

    int inversions = 0;
    std::string detail;
    for (double sigma : {0.1, 1.0}) {
        const double m8 = final_median(sigma, 8), m16 = final_median(sigma, 16), m24 = final_median(sigma, 24);
        inversions += (m24 > m16) + (m16 > m8);
        detail += format("sigma=%g: n24 %.4g, n16 %.4g, n8 %.4g; ", sigma, m24, m16, m8);
    }
    report(4, "n-ordering (b)", inversions <= 1, detail + format("%d inversion(s) (allowed 1)", inversions));

    const double hi50 = mean_at(1.0, 16, 50), lo50 = mean_at(0.1, 16, 50);
    const double hi_end = mean_at(1.0, 16, kIterations), lo_end = mean_at(0.1, 16, kIterations);
    report(4, "sigma crossover (c)", hi50 < lo50 && lo_end < hi_end,
           format("t=50: sigma=1 %.4g < sigma=0.1 %.4g; t=1000: sigma=0.1 %.4g < sigma=1 %.4g", hi50, lo50,
                  lo_end, hi_end));
    return grid;
}

// 5. Step-size adaptation against the fixed sigma=1 baseline.
Curves adaptation(const Desk& desk, const Curves& baseline) {
    const ExhaustiveSolver solver;
    Curves runs;
    for (int r = 0; r < kRuns; ++r) {
        runs.push_back(run_adaptive(desk.qp, Vector::Zero(16), 16, 10, solver,
                                    StoppingRule::iterations(kIterations), r, desk.optimum)
                           .trajectory);
    }
    std::vector<double> fixed_final, adaptive_final;
    double max_sigma_lo = INFINITY, max_sigma_hi = 0.0, final_sigma_hi = 0.0;
    for (int r = 0; r < kRuns; ++r) {
        fixed_final.push_back(loss_at(baseline[r], kIterations));
        adaptive_final.push_back(loss_at(runs[r], kIterations));
        double peak = 0.0;
        for (const auto& rec : runs[r].records) peak = std::max(peak, rec.sigma);
        max_sigma_lo = std::min(max_sigma_lo, peak);
        max_sigma_hi = std::max(max_sigma_hi, peak);
        final_sigma_hi = std::max(final_sigma_hi, runs[r].records.back().sigma);
    }
    const double ratio = median(fixed_final) / median(adaptive_final);
    const bool ok = ratio >= 1e4 && max_sigma_lo >= 3.0 && max_sigma_hi <= 30.0 && final_sigma_hi < 1.0;
    report(5, "step-size adaptation", ok,
           format("median final MSE fixed %.4g / adaptive %.4g = %.3g (>= 1e4); peak sigma in [%.3g, %.3g] "
                  "(within [3, 30]); largest final sigma %.3g (< 1)",
                  median(fixed_final), median(adaptive_final), ratio, max_sigma_lo, max_sigma_hi,
                  final_sigma_hi));
    return runs;
}

// 6. Annealing solver in place of exhaustive search.
void imperfect_solver(const Desk& desk, const Curves& exhaustive) {
    const auto start = Clock::now();
    SAParams sa;
    sa.reads = 10;
    sa.sweeps = 100;
    const AnnealingSolver solver(sa);
    constexpr int kSaRuns = 3;
    bool all_monotone = true;
    double best = INFINITY;
    int best_n = 0;
    std::string detail;
    for (int n : {16, 32, 64}) {
        std::vector<double> finals;
        for (int r = 0; r < kSaRuns; ++r) {
            const auto tr = run_adaptive(desk.qp, Vector::Zero(16), n, 10, solver,
                                         StoppingRule::iterations(kIterations), r, desk.optimum)
                                .trajectory;
            all_monotone = all_monotone && monotone(tr, 0.0);
            finals.push_back(loss_at(tr, kIterations));
        }
        const double med = median(finals);
        detail += format("SA n=%d median %.4g; ", n, med);
        if (med < best) {
            best = med;
            best_n = n;
        }
    }
    std::vector<double> ex;
    for (int r = 0; r < kSaRuns; ++r) ex.push_back(loss_at(exhaustive[r], kIterations));
    const double ex_med = median(ex);
    report(6, "imperfect-solver degradation", all_monotone && best > ex_med,
           detail + format("monotone %s; best SA (n=%d) %.4g vs exhaustive n=16 %.4g (SA must be worse); "
                           "reads=10 sweeps=100, %.1f s",
                           all_monotone ? "yes" : "no", best_n, best, ex_med, seconds_since(start)));
}

// 7. Precision-vector cover.
void precision_cover() {
    const double eps[] = {0.25, 0.05, 0.005};
    const int expected[] = {2, 4, 7};
    auto cover = [](int k) {
        const auto p = precision_vector(k);
        oracle::Vec values;
        for (std::uint64_t b = 0; b < (1ULL << k); ++b) {
            double v = 0.0;
            for (int i = 0; i < k; ++i)
                if ((b >> i) & 1) v += p.weights[i];
            values.push_back(v);
        }
        return oracle::cover_distance(values);
    };
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 3; ++i) {
        const int k = min_bits(eps[i]);
        const double with_k = cover(k);
        const double with_less = cover(k - 1);
        ok = ok && k == expected[i] && with_k <= eps[i] && with_less > eps[i];
        detail += format("eps=%g: k=%d (expect %d), cover %.4g, k-1 cover %.4g; ", eps[i], k, expected[i],
                         with_k, with_less);
    }
    report(7, "precision cover", ok, detail);
}

// 8. Byte-identical reruns.
void determinism() {
    const auto root = fs::temp_directory_path() / "qcqo_acceptance_determinism";
    fs::remove_all(root);
    ExperimentConfig fixed;
    fixed.dataset.synthetic = {16, 10000, 100.0, 0.0};
    fixed.algorithm = Algorithm::kFixed;
    fixed.sigma = 1.0;
    fixed.n = 16;
    fixed.iterations = 200;
    fixed.runs = 3;

    ExperimentConfig annealed = fixed;
    annealed.algorithm = Algorithm::kAdaptive;
    annealed.window = 10;
    annealed.solver = SolverKind::kAnnealing;
    annealed.sa.reads = 10;
    annealed.sa.sweeps = 100;

    int compared = 0, differing = 0;
    int index = 0;
    for (ExperimentConfig cfg : {fixed, annealed}) {
        const auto a = root / ("cfg" + std::to_string(index) + "_a");
        const auto b = root / ("cfg" + std::to_string(index) + "_b");
        ++index;
        cfg.output_dir = a.string();
        run_experiment(cfg);
        cfg.output_dir = b.string();
        cfg.jobs = 2;
        run_experiment(cfg);
        for (std::size_t r = 0; r < cfg.runs; ++r) {
            const std::string name = format("run_%03zu.csv", r);
            ++compared;
            if (slurp(a / name).empty() || slurp(a / name) != slurp(b / name)) ++differing;
        }
    }
    fs::remove_all(root);
    report(8, "determinism", differing == 0,
           format("%d per-run CSVs compared across reruns, %d differ", compared, differing));
}

}  // namespace

int main() {
    const auto start = Clock::now();
    qubo_faithfulness();
    step_moments();
    monotone_descent();
    const Desk desk = desk_instance();
    const auto grid = fixed_grid(desk);
    const auto adaptive = adaptation(desk, grid.at({1.0, 16}));
    imperfect_solver(desk, adaptive);
    precision_cover();
    determinism();
    std::printf("%d criterion line(s) failed, %.1f s total\n", failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
