#include "svie/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace svie {

namespace detail {

std::int64_t aligned_fine_index(double t, const FineNoise& noise) {
    const double ratio = t / noise.fine_step;
    const auto idx = static_cast<std::int64_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(idx)) > 1e-9 * (1.0 + std::abs(ratio))) {
        throw std::invalid_argument("time is not aligned to the fine grid");
    }
    if (idx < 0 || idx > noise.total_fine()) {
        throw std::invalid_argument("time lies outside the fine grid");
    }
    return idx;
}

} // namespace detail

// state_value multiplies the accumulated kernel-increment sum once at the
// end, so scaling state_value scales the result exactly.

double singular_ito_sum(KernelExponent gamma, double t_star, double a, double b,
                        double state_value, const FineNoise& noise) {
    if (!(a <= b) || !(b <= t_star)) {
        throw std::invalid_argument("singular_ito_sum requires a <= b <= t_star");
    }
    const std::int64_t ia = detail::aligned_fine_index(a, noise);
    const std::int64_t ib = detail::aligned_fine_index(b, noise);
    const double g = gamma.value();

    double sum = 0.0;
    for (std::int64_t c = ia; c < ib; ++c) {
        const double left = static_cast<double>(c) * noise.fine_step;
        sum += detail::positive_power(t_star - left, -g) * noise.increments[c];
    }
    return state_value * sum;
}

double difference_kernel_sum(KernelExponent gamma, double s, double anchor,
                             double w0, double w1, double state_value,
                             const FineNoise& noise, Against against) {
    if (!(w0 <= w1) || !(w1 <= anchor) || !(anchor <= s)) {
        throw std::invalid_argument(
            "difference_kernel_sum requires w0 <= w1 <= anchor <= s");
    }
    if (against == Against::Time) {
        return state_value * (integral_power_kernel(gamma, s, w0, w1) -
                              integral_power_kernel(gamma, anchor, w0, w1));
    }

    const std::int64_t i0 = detail::aligned_fine_index(w0, noise);
    const std::int64_t i1 = detail::aligned_fine_index(w1, noise);
    const double g = gamma.value();

    double sum = 0.0;
    for (std::int64_t c = i0; c < i1; ++c) {
        const double left = static_cast<double>(c) * noise.fine_step;
        const double bracket = detail::positive_power(s - left, -g) -
                               detail::positive_power(anchor - left, -g);
        sum += bracket * noise.increments[c];
    }
    return state_value * sum;
}

double local_singular_sum(KernelExponent gamma, double s, double w0,
                          double state_value, const FineNoise& noise,
                          Against against) {
    if (!(w0 <= s)) {
        throw std::invalid_argument("local_singular_sum requires w0 <= s");
    }
    if (against == Against::Time) {
        return state_value * integral_power_kernel(gamma, s, w0, s);
    }

    const std::int64_t i0 = detail::aligned_fine_index(w0, noise);
    const std::int64_t i1 = detail::aligned_fine_index(s, noise);
    const double g = gamma.value();

    double sum = 0.0;
    for (std::int64_t c = i0; c < i1; ++c) {
        const double left = static_cast<double>(c) * noise.fine_step;
        sum += detail::positive_power(s - left, -g) * noise.increments[c];
    }
    return state_value * sum;
}

} // namespace svie
