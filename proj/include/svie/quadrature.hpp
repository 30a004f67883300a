#pragma once

#include "svie/kernel.hpp"
#include "svie/noise.hpp"

namespace svie {

/// Which measure an integral runs against: dr integrals have exact
/// antiderivatives, dB integrals become left-point Riemann-Stieltjes sums
/// over the fine grid.
enum class Against { Time, Brownian };

/// Left-point Riemann-Stieltjes sum for a singular Ito integral with a
/// window-constant integrand factor:
///
///   sum_k (t_star - s_k)^(-gamma) * state_value * dB_k
///
/// over the fine cells covering [a, b], s_k the left endpoint of each cell.
/// [a, b] must align to fine cells and b <= t_star; b == t_star keeps the
/// kernel finite because the last left endpoint is t_star - fine_step.
double singular_ito_sum(KernelExponent gamma, double t_star, double a, double b,
                        double state_value, const FineNoise& noise);

/// History term of the correction/stage integrals: the bracketed kernel
/// difference (s - r)^(-gamma) - (anchor - r)^(-gamma) integrated over a
/// coarse cell [w0, w1] that lies left of anchor <= s.
///
/// Against::Time uses the exact antiderivative of both kernels;
/// Against::Brownian is a left-point sum over the window's fine cells.
/// The bracket is negative for r < anchor < s and is kept as written.
double difference_kernel_sum(KernelExponent gamma, double s, double anchor,
                             double w0, double w1, double state_value,
                             const FineNoise& noise, Against against);

/// Local term over [w0, s], the window abutting the singularity at s.
/// Against::Time is the exact closed form state * (s - w0)^(1-gamma)/(1-gamma);
/// Against::Brownian sums over fine cells in [w0, s), kernels at left
/// endpoints (finite since every left endpoint is below s).
double local_singular_sum(KernelExponent gamma, double s, double w0,
                          double state_value, const FineNoise& noise,
                          Against against);

namespace detail {

/// Fine-grid index of an aligned time, or throws if t is not within
/// round-off of a fine node.
std::int64_t aligned_fine_index(double t, const FineNoise& noise);

} // namespace detail

} // namespace svie
