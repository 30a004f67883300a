#include "svie/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "svie/rng.hpp"

namespace svie {

namespace {

constexpr std::uint64_t kProbeSeed = 0x51e9d3c2b7a41ULL;
constexpr int kProbePairs = 1000;
constexpr double kProbeHalfRange = 10.0;

// Relative slack on the declared constants: the benchmark coefficients are
// exactly 1-Lipschitz, so round-off in sin/cos must not trip the check.
constexpr double kSlack = 1e-9;
constexpr double kAbsFloor = 1e-12;

double probe_point(std::uint64_t counter) {
    return (2.0 * rng::uniform01(kProbeSeed, 0, 0, counter) - 1.0) *
           kProbeHalfRange;
}

std::string format_exceedance(double measured, double bound) {
    std::ostringstream out;
    out << "measured " << measured << " exceeds bound " << bound;
    return out.str();
}

// Worst-case ratio |f(x)-f(y)| / |x-y| over the probe pairs.
AssumptionCheck lipschitz_check(const std::string& name,
                                const SvieProblem::Coefficient& f,
                                double bound) {
    AssumptionCheck check;
    check.name = name;
    double worst = 0.0;
    for (int k = 0; k < kProbePairs; ++k) {
        const double x = probe_point(2 * static_cast<std::uint64_t>(k));
        const double y = probe_point(2 * static_cast<std::uint64_t>(k) + 1);
        const double gap = std::abs(x - y);
        if (gap == 0.0) continue;
        const double diff = std::abs(f(x) - f(y));
        if (diff > bound * gap * (1.0 + kSlack) + kAbsFloor && diff / gap > worst) {
            worst = diff / gap;
            check.passed = false;
            check.witness_x = x;
            check.witness_y = y;
            check.detail = format_exceedance(diff / gap, bound);
        }
    }
    return check;
}

AssumptionCheck bound_check(const std::string& name,
                            const SvieProblem::Coefficient& f, double bound) {
    AssumptionCheck check;
    check.name = name;
    double worst = 0.0;
    for (int k = 0; k < kProbePairs; ++k) {
        const double x = probe_point(2 * static_cast<std::uint64_t>(k));
        const double v = std::abs(f(x));
        if (v > bound * (1.0 + kSlack) + kAbsFloor && v > worst) {
            worst = v;
            check.passed = false;
            check.witness_x = x;
            check.witness_y = x;
            check.detail = format_exceedance(v, bound);
        }
    }
    return check;
}

AssumptionCheck derivative_consistency_check(const SvieProblem& problem) {
    AssumptionCheck check;
    check.name = "derivative-consistency";
    const double step = 1e-4;
    const double tolerance = 1e-6;
    double worst = 0.0;
    for (int k = 0; k < kProbePairs; ++k) {
        const double x = probe_point(2 * static_cast<std::uint64_t>(k));
        const double fd =
            (problem.diffusion(x + step) - problem.diffusion(x - step)) /
            (2.0 * step);
        const double gap = std::abs(problem.diffusion_derivative(x) - fd);
        if (gap > tolerance && gap > worst) {
            worst = gap;
            check.passed = false;
            check.witness_x = x;
            check.witness_y = x;
            check.detail = format_exceedance(gap, tolerance);
        }
    }
    return check;
}

} // namespace

SvieProblem::SvieProblem(double x0_, double horizon_, double alpha_,
                         double beta_, Coefficient drift_,
                         Coefficient diffusion_,
                         Coefficient diffusion_derivative_, double l1,
                         double l2)
    : x0(x0_),
      horizon(horizon_),
      alpha(alpha_),
      beta(beta_),
      drift(std::move(drift_)),
      diffusion(std::move(diffusion_)),
      diffusion_derivative(std::move(diffusion_derivative_)),
      lipschitz_l1(l1),
      lipschitz_l2(l2) {
    if (!(alpha_ > 0.0) || !(alpha_ < 0.5)) {
        throw std::invalid_argument("alpha must lie in (0, 0.5)");
    }
    if (!(beta_ > 0.0) || !(beta_ < 0.5)) {
        throw std::invalid_argument("beta must lie in (0, 0.5)");
    }
    if (!(horizon_ > 0.0)) {
        throw std::invalid_argument("horizon must be positive");
    }
    if (!drift || !diffusion || !diffusion_derivative) {
        throw std::invalid_argument("all three coefficient maps are required");
    }
}

bool ValidationReport::all_passed() const {
    for (const auto& check : checks) {
        if (!check.passed) return false;
    }
    return true;
}

ValidationReport validate(const SvieProblem& problem) {
    ValidationReport report;
    report.checks.push_back(
        lipschitz_check("drift-lipschitz", problem.drift, problem.lipschitz_l1));
    report.checks.push_back(lipschitz_check("diffusion-lipschitz",
                                            problem.diffusion,
                                            problem.lipschitz_l1));
    report.checks.push_back(bound_check("diffusion-derivative-bound",
                                        problem.diffusion_derivative,
                                        problem.lipschitz_l2));
    report.checks.push_back(lipschitz_check("diffusion-derivative-lipschitz",
                                            problem.diffusion_derivative,
                                            problem.lipschitz_l2));
    report.checks.push_back(derivative_consistency_check(problem));
    return report;
}

SvieProblem builtin_benchmark(double alpha, double beta) {
    return SvieProblem(
        1.0, 1.0, alpha, beta,
        [](double x) { return std::abs(std::sin(x)); },
        [](double x) { return std::cos(x); },
        [](double x) { return -std::sin(x); },
        1.0, 1.0);
}

SvieProblem problem_by_name(const std::string& name, double alpha,
                            double beta) {
    if (name == "paper-sin-cos") {
        return builtin_benchmark(alpha, beta);
    }
    if (name == "zero") {
        auto zero = [](double) { return 0.0; };
        return SvieProblem(1.0, 1.0, alpha, beta, zero, zero, zero, 1.0, 1.0);
    }
    throw std::invalid_argument("unknown problem name: " + name);
}

} // namespace svie
