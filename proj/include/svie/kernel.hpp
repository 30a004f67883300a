#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace svie {

/// Exponent of a weakly singular power kernel (t - s)^(-gamma).
///
/// Valid exponents lie strictly inside (0, 1): alpha and beta themselves are
/// restricted to (0, 1/2) at problem construction, but second-moment formulas
/// also need the derived exponent 2*beta, so the kernel layer accepts the
/// full integrable range.
class KernelExponent {
public:
    explicit KernelExponent(double gamma) : gamma_(gamma) {
        if (!(gamma > 0.0) || !(gamma < 1.0)) {
            throw std::invalid_argument("kernel exponent must lie in (0, 1)");
        }
    }
    double value() const noexcept { return gamma_; }

private:
    double gamma_;
};

namespace detail {

/// x^p for x > 0, computed as exp(p*log(x)). Every power-kernel value in the
/// library routes through here so all modules agree bit-for-bit.
/// x == 0 with p > 0 returns 0 (the antiderivative limit at the singularity).
inline double positive_power(double x, double p) {
    if (x == 0.0) {
        if (p > 0.0) return 0.0;
        throw std::domain_error("power of zero with non-positive exponent");
    }
    return std::exp(p * std::log(x));
}

} // namespace detail

/// Kernel value (t - s)^(-gamma). Requires s < t strictly.
inline double eval_kernel(KernelExponent gamma, double t, double s) {
    if (!(s < t)) {
        throw std::domain_error("eval_kernel requires s < t strictly");
    }
    return detail::positive_power(t - s, -gamma.value());
}

/// Exact integral of the kernel over a window left of its singularity:
///
///   integral_{a}^{b} (t_star - s)^(-gamma) ds
///     = [(t_star - a)^(1-gamma) - (t_star - b)^(1-gamma)] / (1 - gamma)
///
/// Requires a <= b <= t_star; b == t_star is allowed (the integral converges
/// because gamma < 1). Result is nonnegative.
inline double integral_power_kernel(KernelExponent gamma, double t_star,
                                    double a, double b) {
    if (!(a <= b) || !(b <= t_star)) {
        throw std::domain_error(
            "integral_power_kernel requires a <= b <= t_star");
    }
    const double p = 1.0 - gamma.value();
    const double upper = detail::positive_power(t_star - a, p);
    const double lower = detail::positive_power(t_star - b, p);
    return (upper - lower) / p;
}

/// Second moment, over tau ~ U(0,1), of the randomized drift weight
/// h * (t_n - (t_{j-1} + tau*h))^(-alpha):
///
///   h^(2(1-alpha)) / (1 - 2 alpha) * [(n+1-j)^(1-2alpha) - (n-j)^(1-2alpha)]
///
/// Requires 1 <= j <= n and 2*alpha < 1.
inline double expected_randomized_weight_sq(KernelExponent alpha,
                                            std::int64_t n, std::int64_t j,
                                            double h) {
    if (j < 1 || j > n) {
        throw std::domain_error(
            "expected_randomized_weight_sq requires 1 <= j <= n");
    }
    const double a = alpha.value();
    if (!(2.0 * a < 1.0)) {
        throw std::domain_error(
            "expected_randomized_weight_sq requires 2*alpha < 1");
    }
    const double p = 1.0 - 2.0 * a;
    const double lead = detail::positive_power(h, 2.0 * (1.0 - a)) / p;
    const double upper = detail::positive_power(static_cast<double>(n + 1 - j), p);
    const double lower = detail::positive_power(static_cast<double>(n - j), p);
    return lead * (upper - lower);
}

} // namespace svie
