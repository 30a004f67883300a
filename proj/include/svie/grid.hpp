#pragma once

#include <cstdint>
#include <stdexcept>

namespace svie {

/// Uniform partition t_n = n*h of [0, T] into coarse_n steps, each coarse
/// cell subdivided into refine_factor fine cells of width fine_step().
/// The fine grid carries the Brownian increments and every
/// Riemann-Stieltjes sum; the coarse grid carries the scheme nodes.
struct GridSpec {
    double horizon;              // T
    std::int64_t coarse_n;       // N
    std::int64_t refine_factor;  // fine cells per coarse cell

    GridSpec(double T, std::int64_t n, std::int64_t factor)
        : horizon(T), coarse_n(n), refine_factor(factor) {
        if (!(T > 0.0)) {
            throw std::invalid_argument("grid horizon must be positive");
        }
        if (n < 1 || factor < 1) {
            throw std::invalid_argument(
                "grid needs coarse_n >= 1 and refine_factor >= 1");
        }
    }

    double coarse_step() const noexcept { return horizon / static_cast<double>(coarse_n); }
    double fine_step() const noexcept { return horizon / static_cast<double>(total_fine()); }
    std::int64_t total_fine() const noexcept { return coarse_n * refine_factor; }

    double coarse_time(std::int64_t n) const noexcept {
        return static_cast<double>(n) * coarse_step();
    }
    double fine_time(std::int64_t idx) const noexcept {
        return static_cast<double>(idx) * fine_step();
    }
};

} // namespace svie
