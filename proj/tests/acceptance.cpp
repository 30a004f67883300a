// Acceptance suite: runs every gate criterion end to end and prints one
// PASS/FAIL line per criterion. Exit code is the number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "reference_scheme.hpp"
#include "svie/experiment.hpp"
#include "svie/io.hpp"
#include "svie/kernel.hpp"
#include "svie/noise.hpp"
#include "svie/problem.hpp"
#include "svie/quadrature.hpp"
#include "svie/rng.hpp"
#include "svie/scheme.hpp"

#include "oracle_quadrature.hpp"

using namespace svie;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool passed,
            const std::string& detail) {
    std::printf("[%s] criterion %d: %s — %s\n", passed ? "PASS" : "FAIL",
                criterion, name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!passed) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

// Criteria 1 and 2: convergence-rate reproduction for the paper's two
// exponent pairs, levels 2^4..2^7 against the 2^-8 reference.
void rate_criterion(int criterion, double alpha, double beta, double target,
                    std::int64_t paths, std::uint64_t seed) {
    const SvieProblem bench = builtin_benchmark(alpha, beta);
    const ErrorTable table =
        strong_error(bench, {16, 32, 64, 128}, 256, paths, seed);
    const RateEstimate rate = estimate_rate(table, bench.alpha, bench.beta);
    const bool ok = std::abs(rate.slope - target) <= 0.15;
    std::ostringstream detail;
    detail << "slope " << fmt(rate.slope) << " vs " << fmt(target)
           << " +/- 0.15 (r^2 " << fmt(rate.r_squared) << ", " << paths
           << " paths, seed " << seed << ")";
    report(criterion, "rate reproduction, pair (" + fmt(alpha) + ", " +
                          fmt(beta) + ")",
           ok, detail.str());
}

void criterion_3_unbiasedness() {
    struct Case { double alpha; std::int64_t n, j; double h; };
    const std::vector<Case> grid = {
        {0.10, 1, 1, 1.0},    {0.15, 4, 4, 0.25},  {0.30, 4, 2, 0.25},
        {0.30, 16, 1, 0.0625}, {0.20, 8, 5, 0.125}, {0.25, 10, 7, 0.1},
        {0.40, 6, 3, 0.5},    {0.45, 5, 1, 0.2},   {0.35, 12, 6, 0.125},
        {0.05, 9, 9, 0.125}};
    const std::int64_t draws = 100000;

    bool all_ok = true;
    std::string worst;
    double worst_sigmas = 0.0;
    for (std::size_t c = 0; c < grid.size(); ++c) {
        const auto& [alpha, n, j, h] = grid[c];
        const double t_n = static_cast<double>(n) * h;
        const double t_prev = static_cast<double>(j - 1) * h;
        double mean = 0.0, m2 = 0.0;
        for (std::int64_t i = 0; i < draws; ++i) {
            const double tau = rng::uniform_open01(
                2027, static_cast<std::uint64_t>(c), 1,
                static_cast<std::uint64_t>(i));
            const double w = h * std::pow(t_n - (t_prev + tau * h), -alpha);
            const double sq = w * w;
            const double delta = sq - mean;
            mean += delta / static_cast<double>(i + 1);
            m2 += delta * (sq - mean);
        }
        const double se = std::sqrt(m2 / static_cast<double>(draws - 1) /
                                    static_cast<double>(draws));
        const double expected =
            expected_randomized_weight_sq(KernelExponent(alpha), n, j, h);
        const double sigmas = std::abs(mean - expected) / se;
        if (sigmas > worst_sigmas) {
            worst_sigmas = sigmas;
            std::ostringstream s;
            s << "worst case alpha=" << alpha << " n=" << n << " j=" << j
              << " at " << fmt(sigmas) << " standard errors";
            worst = s.str();
        }
        if (sigmas > 3.0) all_ok = false;
    }
    report(3, "randomized-quadrature second moment, 10-case grid", all_ok,
           worst);
}

void criterion_4_degeneracy() {
    bool ok = true;
    std::string detail = "all degeneracies hold";

    // (a) constant diffusion: Milstein == randomized EM bitwise
    const SvieProblem const_sigma(
        1.0, 1.0, 0.3, 0.1, [](double x) { return std::abs(std::sin(x)); },
        [](double) { return 0.5; }, [](double) { return 0.0; });
    const GridSpec grid(1.0, 16, 4);
    const FineNoise noise = generate_fine_noise(404, 0, grid, {16});
    const Trajectory rm =
        simulate(const_sigma, grid, noise, Scheme::RandomizedMilstein);
    const Trajectory rem =
        simulate(const_sigma, grid, noise, Scheme::RandomizedEM);
    for (std::int64_t n = 0; n <= 16; ++n) {
        if (rm.values[n] != rem.values[n]) {
            ok = false;
            detail = "constant-sigma trajectories differ at node " +
                     std::to_string(n);
        }
    }

    // (b) zero coefficients: constant trajectory
    const SvieProblem zero = problem_by_name("zero", 0.3, 0.1);
    const Trajectory flat =
        simulate(zero, grid, noise, Scheme::RandomizedMilstein);
    for (std::int64_t n = 0; n <= 16; ++n) {
        if (flat.values[n] != zero.x0) {
            ok = false;
            detail = "zero-coefficient trajectory moved at node " +
                     std::to_string(n);
        }
    }

    // (c) level == ref: strong error exactly zero
    const ErrorTable table =
        strong_error(builtin_benchmark(0.3, 0.1), {64}, 64, 20, 404);
    if (table.rows[0].l2_error != 0.0) {
        ok = false;
        detail = "self-comparison error is " +
                 std::to_string(table.rows[0].l2_error);
    }

    report(4, "degeneracy suite", ok, detail);
}

void criterion_5_oracle_equivalence() {
    const SvieProblem bench = builtin_benchmark(0.3, 0.1);
    const GridSpec grid(1.0, 8, 4);
    double worst = 0.0;
    for (std::int64_t path = 0; path < 20; ++path) {
        const FineNoise noise = generate_fine_noise(505, path, grid, {8});
        const Trajectory engine =
            simulate(bench, grid, noise, Scheme::RandomizedMilstein);
        const std::vector<double> oracle =
            testutil::ref_milstein(bench, grid, noise);
        for (std::int64_t n = 0; n <= 8; ++n) {
            const double rel =
                std::abs(engine.values[n] - oracle[n]) /
                std::max({1.0, std::abs(engine.values[n]), std::abs(oracle[n])});
            worst = std::max(worst, rel);
        }
    }
    report(5, "straight-line oracle equivalence (N=8, refine 4, 20 paths)",
           worst <= 1e-12, "worst relative gap " + fmt(worst / 1e-12) + "e-12");
}

void criterion_6_deterministic_volterra() {
    const SvieProblem problem(
        0.0, 1.0, 0.3, 0.25, [](double) { return 1.0; },
        [](double) { return 0.0; }, [](double) { return 0.0; });
    const double exact = 1.0 / 0.7;  // x0 + T^(1-alpha)/(1-alpha) at T=1

    std::vector<double> medians;
    for (std::int64_t n : {16, 32, 64, 128}) {
        const GridSpec grid(1.0, n, 1);
        std::vector<double> errors;
        for (std::int64_t path = 0; path < 100; ++path) {
            const FineNoise noise = generate_fine_noise(606, path, grid, {n});
            const Trajectory traj =
                simulate(problem, grid, noise, Scheme::RandomizedMilstein);
            errors.push_back(std::abs(traj.values[n] - exact));
        }
        std::sort(errors.begin(), errors.end());
        medians.push_back(errors[errors.size() / 2]);
    }
    bool ok = true;
    for (std::size_t i = 0; i + 1 < medians.size(); ++i) {
        if (medians[i + 1] >= medians[i]) ok = false;
    }
    std::ostringstream detail;
    detail << "median |X_N - exact| over 100 tau-realizations:";
    for (double m : medians) detail << ' ' << fmt(m);
    report(6, "deterministic Volterra convergence (sigma=0, b=1)", ok,
           detail.str());
}

void criterion_7_kernel_closed_forms() {
    bool ok = true;
    std::string detail;

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto k = static_cast<std::uint64_t>(trial);
        const double gamma = 0.02 + 0.96 * rng::uniform01(707, 0, 0, 4 * k);
        const double t_star = 0.2 + 3.0 * rng::uniform01(707, 0, 0, 4 * k + 1);
        const double u = rng::uniform01(707, 0, 0, 4 * k + 2);
        const double v = rng::uniform01(707, 0, 0, 4 * k + 3);
        const double b = 0.9 * t_star * std::max(u, v);
        const double a = 0.9 * t_star * std::min(u, v);
        const KernelExponent g(gamma);
        const double closed = integral_power_kernel(g, t_star, a, b);
        const double quad = testutil::integrate(
            [&](double s) { return eval_kernel(g, t_star, s); }, a, b);
        worst = std::max(worst,
                         std::abs(closed - quad) / std::max(std::abs(quad), 1e-30));
    }
    if (worst > 1e-8) ok = false;
    detail = "worst quadrature gap " + fmt(worst / 1e-8) + "e-8";

    // Ito isometry: sample variance of the singular sum vs the squared-kernel
    // integral.
    const double g = 0.3;
    const GridSpec grid(0.5, 2, 64);
    const std::int64_t paths = 10000;
    double mean = 0.0, m2 = 0.0;
    for (std::int64_t p = 0; p < paths; ++p) {
        const FineNoise noise = generate_fine_noise(708, p, grid, {2});
        const double sum =
            singular_ito_sum(KernelExponent(g), 0.5, 0.0, 0.25, 1.0, noise);
        const double delta = sum - mean;
        mean += delta / static_cast<double>(p + 1);
        m2 += delta * (sum - mean);
    }
    const double variance = m2 / static_cast<double>(paths - 1);
    const double expected =
        integral_power_kernel(KernelExponent(2.0 * g), 0.5, 0.0, 0.25);
    const double gap = std::abs(variance - expected) / expected;
    if (gap > 0.05) ok = false;
    detail += ", isometry gap " + fmt(100.0 * gap) + "%";

    report(7, "kernel closed forms and Ito isometry", ok, detail);
}

void criterion_8_reproducibility() {
    const SvieProblem bench = builtin_benchmark(0.3, 0.1);
    StrongErrorOptions single, pooled;
    single.threads = 1;
    pooled.threads = 4;
    const ErrorTable a = strong_error(bench, {8, 16, 32}, 64, 40, 808, single);
    const ErrorTable b = strong_error(bench, {8, 16, 32}, 64, 40, 808, pooled);
    std::ostringstream csv_a, csv_b;
    write_error_table_csv(csv_a, a);
    write_error_table_csv(csv_b, b);
    const bool ok = csv_a.str() == csv_b.str();
    report(8, "byte-identical CSV under 1-thread and 4-thread execution", ok,
           ok ? "identical" : "outputs differ");
}

} // namespace

int main() {
    std::printf("svie acceptance suite\n");

    rate_criterion(1, 0.3, 0.1, 0.7, 4000, 3);
    rate_criterion(2, 0.2, 0.3, 0.4, 2000, 1);
    criterion_3_unbiasedness();
    criterion_4_degeneracy();
    criterion_5_oracle_equivalence();
    criterion_6_deterministic_volterra();
    criterion_7_kernel_closed_forms();
    criterion_8_reproducibility();

    std::printf("%d of 8 criteria failed\n", failures);
    return failures;
}
