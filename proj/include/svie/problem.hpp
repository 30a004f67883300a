#pragma once

#include <functional>
#include <string>
#include <vector>

#include "svie/kernel.hpp"

namespace svie {

/// A scalar stochastic Volterra integral equation instance
///
///   X(t) = x0 + int_0^t (t-s)^(-alpha) b(X(s)) ds
///             + int_0^t (t-s)^(-beta)  sigma(X(s)) dB_s
///
/// with alpha, beta in (0, 1/2). Coefficient maps must be pure and callable
/// concurrently; diffusion_derivative is supplied by the caller and checked
/// against a finite difference of sigma by validate().
struct SvieProblem {
    using Coefficient = std::function<double(double)>;

    double x0;
    double horizon;
    KernelExponent alpha;
    KernelExponent beta;
    Coefficient drift;                 // b
    Coefficient diffusion;             // sigma
    Coefficient diffusion_derivative;  // sigma'

    // Declared constants for the Lipschitz / derivative-bound checks.
    // Test-contract parameters only; never used by the solvers.
    double lipschitz_l1 = 1.0;
    double lipschitz_l2 = 1.0;

    SvieProblem(double x0_, double horizon_, double alpha_, double beta_,
                Coefficient drift_, Coefficient diffusion_,
                Coefficient diffusion_derivative_, double l1 = 1.0,
                double l2 = 1.0);
};

/// One probed assumption: passed/failed plus the witnessing point pair and a
/// human-readable measurement on failure.
struct AssumptionCheck {
    std::string name;
    bool passed = true;
    double witness_x = 0.0;
    double witness_y = 0.0;
    std::string detail;
};

struct ValidationReport {
    std::vector<AssumptionCheck> checks;
    bool all_passed() const;
};

/// Finite-sample check of the Lipschitz and C^1-derivative assumptions on a
/// fixed probe set of ~10^3 point pairs in [-10, 10]. Failures are reported,
/// not thrown.
ValidationReport validate(const SvieProblem& problem);

/// The benchmark instance b(x) = |sin x|, sigma(x) = cos x,
/// sigma'(x) = -sin x, x0 = 1, T = 1. Both coefficients are 1-Lipschitz
/// (b is non-differentiable at multiples of pi).
SvieProblem builtin_benchmark(double alpha, double beta);

/// Builtin problems selectable by name: "paper-sin-cos" (the benchmark) and
/// "zero" (b = sigma = 0, for plumbing tests). Unknown names throw.
SvieProblem problem_by_name(const std::string& name, double alpha, double beta);

} // namespace svie
