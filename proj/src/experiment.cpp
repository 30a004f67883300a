#include "svie/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <thread>

#include <Eigen/Dense>

#include "svie/noise.hpp"

namespace svie {

namespace {

// Squared pathwise errors for one path: reference at ref_n, one entry per
// requested level.
std::vector<double> path_squared_errors(const SvieProblem& problem,
                                        const std::vector<std::int64_t>& levels,
                                        std::int64_t ref_n, std::uint64_t seed,
                                        std::int64_t path,
                                        const StrongErrorOptions& options) {
    const GridSpec ref_grid(problem.horizon, ref_n, 1);
    std::vector<std::int64_t> tau_levels = levels;
    tau_levels.push_back(ref_n);
    const FineNoise noise = generate_fine_noise(seed, path, ref_grid, tau_levels);

    const Trajectory reference =
        simulate(problem, ref_grid, noise, Scheme::RandomizedMilstein);

    std::vector<double> sq(levels.size());
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const std::int64_t level = levels[i];
        const GridSpec grid(problem.horizon, level, ref_n / level);
        const Trajectory coarse = simulate(problem, grid, noise, options.scheme);
        double err = 0.0;
        if (options.metric == ErrorMetric::Terminal) {
            err = std::abs(coarse.values[level] - reference.values[ref_n]);
        } else {
            const std::int64_t stride = ref_n / level;
            for (std::int64_t k = 0; k <= level; ++k) {
                err = std::max(err, std::abs(coarse.values[k] -
                                             reference.values[k * stride]));
            }
        }
        sq[i] = err * err;
    }
    return sq;
}

} // namespace

ErrorTable strong_error(const SvieProblem& problem,
                        const std::vector<std::int64_t>& levels,
                        std::int64_t ref_n, std::int64_t paths,
                        std::uint64_t seed,
                        const StrongErrorOptions& options) {
    if (levels.empty()) {
        throw std::invalid_argument("strong_error needs at least one level");
    }
    for (std::int64_t level : levels) {
        if (level < 1 || ref_n % level != 0) {
            throw std::invalid_argument(
                "every level must divide the reference step count");
        }
    }
    if (paths < 2) {
        throw std::invalid_argument("strong_error needs at least 2 paths");
    }

    // Workers fill disjoint slots; the reduction below runs in path order, so
    // the table is identical for any thread count.
    std::vector<std::vector<double>> sq(paths);
    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        for (std::int64_t p = 0; p < paths; ++p) {
            sq[p] = path_squared_errors(problem, levels, ref_n, seed, p, options);
        }
    } else {
        std::atomic<std::int64_t> next{0};
        auto worker = [&] {
            while (true) {
                const std::int64_t p = next.fetch_add(1);
                if (p >= paths) break;
                sq[p] = path_squared_errors(problem, levels, ref_n, seed, p,
                                            options);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    ErrorTable table;
    for (std::size_t i = 0; i < levels.size(); ++i) {
        double mean = 0.0;
        for (std::int64_t p = 0; p < paths; ++p) mean += sq[p][i];
        mean /= static_cast<double>(paths);

        double var = 0.0;
        for (std::int64_t p = 0; p < paths; ++p) {
            const double d = sq[p][i] - mean;
            var += d * d;
        }
        var /= static_cast<double>(paths - 1);
        const double se_mean = std::sqrt(var / static_cast<double>(paths));

        ErrorRow row;
        row.coarse_n = levels[i];
        row.h = problem.horizon / static_cast<double>(levels[i]);
        row.l2_error = std::sqrt(mean);
        // Delta method for sqrt of the mean squared error.
        row.std_error = mean > 0.0 ? se_mean / (2.0 * std::sqrt(mean)) : 0.0;
        row.paths = paths;
        table.rows.push_back(row);
    }
    std::sort(table.rows.begin(), table.rows.end(),
              [](const ErrorRow& a, const ErrorRow& b) { return a.h > b.h; });
    return table;
}

RateEstimate estimate_rate(const ErrorTable& table, KernelExponent alpha,
                           KernelExponent beta) {
    std::vector<double> xs, ys;
    for (const ErrorRow& row : table.rows) {
        if (row.l2_error > 0.0) {
            xs.push_back(std::log2(row.h));
            ys.push_back(std::log2(row.l2_error));
        } else {
            std::cerr << "warning: excluding zero-error row N=" << row.coarse_n
                      << " from the rate fit\n";
        }
    }
    if (xs.size() < 2) {
        throw std::runtime_error(
            "rate estimation needs at least 2 rows with positive errors");
    }

    const auto n = static_cast<Eigen::Index>(xs.size());
    Eigen::MatrixXd design(n, 2);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        design(i, 0) = xs[static_cast<std::size_t>(i)];
        design(i, 1) = 1.0;
        rhs(i) = ys[static_cast<std::size_t>(i)];
    }
    const Eigen::Vector2d coeffs = design.householderQr().solve(rhs);

    const double mean_y = rhs.mean();
    const double ss_tot = (rhs.array() - mean_y).square().sum();
    const double ss_res = (rhs - design * coeffs).array().square().sum();

    RateEstimate estimate;
    estimate.slope = coeffs(0);
    estimate.intercept = coeffs(1);
    estimate.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    estimate.theoretical = theoretical_rate(alpha, beta);
    return estimate;
}

double theoretical_rate(KernelExponent alpha, KernelExponent beta) {
    return std::min(1.0 - 2.0 * beta.value(), 1.0 - alpha.value());
}

double holder_exponent(KernelExponent alpha, KernelExponent beta) {
    return std::min(0.5 - beta.value(), 1.0 - alpha.value());
}

} // namespace svie
