#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "svie/grid.hpp"
#include "svie/noise.hpp"
#include "svie/problem.hpp"

namespace svie {

enum class Scheme { RandomizedMilstein, RandomizedEM, ClassicalEM };

Scheme scheme_from_name(const std::string& name);  // rmilstein | rem | em
std::string scheme_name(Scheme scheme);

/// Coarse-node values X_0 .. X_N produced by one scheme on one noise path.
struct Trajectory {
    std::int64_t level = 0;
    Eigen::ArrayXd values;  // size level + 1
    Scheme scheme_tag = Scheme::RandomizedMilstein;
};

/// Per-step state the convolution reuses across outer steps n.
///
/// inner[j-1][m] holds the accumulated inner integrals A_j(s) at the m-th
/// fine node s of coarse cell j: the two exact dr pieces plus the two
/// left-point dB pieces of the correction bracket. A_j(s) involves only s,
/// j and the history X_0..X_{j-1}, never the outer index n, so each row is
/// computed once and reused by every step n >= j.
struct StageCache {
    std::vector<double> drift_at_stage;   // b(Y_j), 1-based step j at [j-1]
    std::vector<double> drift_node;       // t_{j-1} + tau_j * h
    std::vector<double> sigma_hist;       // sigma(X_{j-1})
    std::vector<double> dsigma_hist;      // sigma'(X_{j-1})
    std::vector<Eigen::ArrayXd> inner;    // A_j at the fine nodes of cell j

    std::int64_t steps() const { return static_cast<std::int64_t>(sigma_hist.size()); }
};

struct SimulateOptions {
    // Recomputing the inner accumulations for every outer step reproduces the
    // cached result to round-off; the knob exists so tests can prove it.
    bool reuse_stage_cache = true;
};

/// Predictor Y_j evaluated at the randomized node t_{j-1} + tau_j * h.
/// history must hold X_0..X_{j-1}. The local Brownian window is truncated to
/// whole fine cells, floor(tau_j * refine_factor) of them; the kernel keeps
/// the exact randomized upper time.
double stage_y(const SvieProblem& problem, const GridSpec& grid,
               const FineNoise& noise, std::span<const double> history,
               std::int64_t j);

/// Extend the cache with step j (computes Y_j, coefficient values and the
/// inner accumulation row). history must hold X_0..X_{j-1} and the cache
/// exactly steps 1..j-1.
void fill_stage(const SvieProblem& problem, const GridSpec& grid,
                const FineNoise& noise, std::span<const double> history,
                StageCache& cache, std::int64_t j);

/// One outer step of the randomized Milstein convolution: X_n from the full
/// history and a cache filled for steps 1..n.
double step_x(const SvieProblem& problem, const GridSpec& grid,
              const FineNoise& noise, std::span<const double> history,
              const StageCache& cache, std::int64_t n);

/// Run a scheme over the whole grid. Every X_n is a fresh convolution over
/// the full history (the kernel rules out a one-step recursion); the cache
/// keeps the correction cost at O(N^2 * refine_factor) kernel evaluations.
/// Pure function of its arguments.
Trajectory simulate(const SvieProblem& problem, const GridSpec& grid,
                    const FineNoise& noise, Scheme scheme,
                    const SimulateOptions& options = {});

} // namespace svie
