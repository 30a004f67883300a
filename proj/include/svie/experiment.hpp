#pragma once

#include <cstdint>
#include <vector>

#include "svie/problem.hpp"
#include "svie/scheme.hpp"

namespace svie {

struct ErrorRow {
    std::int64_t coarse_n = 0;
    double h = 0.0;
    double l2_error = 0.0;
    double std_error = 0.0;
    std::int64_t paths = 0;
};

/// Per-stepsize strong errors, rows sorted by descending h.
struct ErrorTable {
    std::vector<ErrorRow> rows;
};

struct RateEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double theoretical = 0.0;  // min{1 - 2*beta, 1 - alpha}
};

/// Where the pathwise error is measured against the reference.
enum class ErrorMetric { Terminal, MaxOverNodes };

struct StrongErrorOptions {
    Scheme scheme = Scheme::RandomizedMilstein;
    ErrorMetric metric = ErrorMetric::Terminal;
    int threads = 1;
};

/// Coupled-path Monte Carlo estimate of the strong L2 error at T for each
/// coarse level against a randomized Milstein reference at ref_n
/// (refine_factor 1). Every level of every path consumes the same fine
/// Brownian path; each level draws its own tau stream. std_error is the
/// delta-method standard error of the square root of the mean squared error.
///
/// Paths are independent work units aggregated in fixed path order, so the
/// result does not depend on the thread count.
ErrorTable strong_error(const SvieProblem& problem,
                        const std::vector<std::int64_t>& levels,
                        std::int64_t ref_n, std::int64_t paths,
                        std::uint64_t seed,
                        const StrongErrorOptions& options = {});

/// Ordinary least squares of log2(l2_error) on log2(h). Zero-error rows are
/// excluded with a warning on stderr; fewer than two usable rows is an error.
RateEstimate estimate_rate(const ErrorTable& table, KernelExponent alpha,
                           KernelExponent beta);

/// Strong convergence rate the scheme is expected to show: min{1-2b, 1-a}.
double theoretical_rate(KernelExponent alpha, KernelExponent beta);

/// Temporal Hölder exponent of the exact solution: min{1/2 - b, 1 - a}.
double holder_exponent(KernelExponent alpha, KernelExponent beta);

} // namespace svie
