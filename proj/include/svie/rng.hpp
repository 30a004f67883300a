#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace svie {

// Counter-based random streams: every variate is a pure function of
// (master_seed, path_index, stream, counter), so generation order and
// thread scheduling can never change a path's noise.

namespace rng {

/// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

inline std::uint64_t word_at(std::uint64_t seed, std::uint64_t path,
                             std::uint64_t stream, std::uint64_t counter) {
    return mix64(combine(combine(combine(mix64(seed), path), stream), counter));
}

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t path,
                        std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(word_at(seed, path, stream, counter) >> 11) *
           0x1.0p-53;
}

/// Uniform on the open interval (0, 1): an exact 0 draw is remapped to the
/// next representable positive value, and 1 is unreachable by construction.
inline double uniform_open01(std::uint64_t seed, std::uint64_t path,
                             std::uint64_t stream, std::uint64_t counter) {
    const double u = uniform01(seed, path, stream, counter);
    return u == 0.0 ? std::numeric_limits<double>::denorm_min() : u;
}

/// Standard normal via Box-Muller on two counter-derived uniforms.
inline double gaussian(std::uint64_t seed, std::uint64_t path,
                       std::uint64_t stream, std::uint64_t counter) {
    const double u1 = 1.0 - uniform01(seed, path, stream, 2 * counter);     // (0, 1]
    const double u2 = uniform01(seed, path, stream, 2 * counter + 1);       // [0, 1)
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

// Stream tags. Brownian increments and the uniform tau draws live on
// disjoint streams; each coarse level gets its own tau sub-stream.
inline constexpr std::uint64_t kBrownianStream = 0x42'0000'0000ULL;

inline constexpr std::uint64_t tau_stream(std::int64_t level) {
    return 0x7a'0000'0000ULL + static_cast<std::uint64_t>(level);
}

} // namespace rng

} // namespace svie
