#include "svie/scheme.hpp"

#include <cmath>
#include <stdexcept>

#include "svie/quadrature.hpp"

namespace svie {

Scheme scheme_from_name(const std::string& name) {
    if (name == "rmilstein") return Scheme::RandomizedMilstein;
    if (name == "rem") return Scheme::RandomizedEM;
    if (name == "em") return Scheme::ClassicalEM;
    throw std::invalid_argument("unknown scheme name: " + name);
}

std::string scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::RandomizedMilstein: return "rmilstein";
        case Scheme::RandomizedEM: return "rem";
        case Scheme::ClassicalEM: return "em";
    }
    throw std::logic_error("unreachable scheme tag");
}

namespace {

void check_noise_covers(const GridSpec& grid, const FineNoise& noise,
                        bool needs_tau) {
    if (noise.total_fine() != grid.total_fine()) {
        throw std::invalid_argument(
            "noise does not cover the grid's fine resolution");
    }
    if (std::abs(noise.fine_step - grid.fine_step()) >
        1e-12 * grid.fine_step()) {
        throw std::invalid_argument("noise fine step does not match the grid");
    }
    if (needs_tau &&
        noise.taus_by_level.find(grid.coarse_n) == noise.taus_by_level.end()) {
        throw std::invalid_argument("no tau draws stored for this coarse level");
    }
}

// Largest whole-cell count m with t_{j-1} + m*fine_step <= node, capped at
// refine_factor - 1. floor(tau * F) except when rounding in tau*F crossed an
// integer boundary.
std::int64_t truncated_cells(const GridSpec& grid, std::int64_t j, double tau,
                             double node) {
    auto cells =
        static_cast<std::int64_t>(std::floor(tau * static_cast<double>(grid.refine_factor)));
    const std::int64_t base = (j - 1) * grid.refine_factor;
    while (cells > 0 && grid.fine_time(base + cells) > node) --cells;
    return cells;
}

double randomized_drift_sum(const GridSpec& grid, double alpha, double t_n,
                            const StageCache& cache, std::int64_t n) {
    const double h = grid.coarse_step();
    double sum = 0.0;
    for (std::int64_t j = 1; j <= n; ++j) {
        sum += h * detail::positive_power(t_n - cache.drift_node[j - 1], -alpha) *
               cache.drift_at_stage[j - 1];
    }
    return sum;
}

double plain_diffusion_sum(const SvieProblem& problem, const GridSpec& grid,
                           const FineNoise& noise, double t_n,
                           std::span<const double> sigma_hist, std::int64_t n) {
    double sum = 0.0;
    for (std::int64_t j = 1; j <= n; ++j) {
        sum += singular_ito_sum(problem.beta, t_n, grid.coarse_time(j - 1),
                                grid.coarse_time(j), sigma_hist[j - 1], noise);
    }
    return sum;
}

double correction_sum(const SvieProblem& problem, const GridSpec& grid,
                      const FineNoise& noise, double t_n,
                      const StageCache& cache, std::int64_t n) {
    const double beta = problem.beta.value();
    const std::int64_t factor = grid.refine_factor;
    double sum = 0.0;
    for (std::int64_t j = 1; j <= n; ++j) {
        const Eigen::ArrayXd& row = cache.inner[j - 1];
        const std::int64_t base = (j - 1) * factor;
        double outer = 0.0;
        for (std::int64_t m = 0; m < factor; ++m) {
            outer += detail::positive_power(t_n - grid.fine_time(base + m), -beta) *
                     row[m] * noise.increments[base + m];
        }
        sum += cache.dsigma_hist[j - 1] * outer;
    }
    return sum;
}

void fill_stage_impl(const SvieProblem& problem, const GridSpec& grid,
                     const FineNoise& noise, std::span<const double> history,
                     StageCache& cache, std::int64_t j, bool with_inner) {
    if (cache.steps() != j - 1) {
        throw std::invalid_argument("stage cache must be filled in step order");
    }
    const double h = grid.coarse_step();
    const double t_prev = grid.coarse_time(j - 1);
    const double tau = tau_for_step(noise, grid.coarse_n, j);

    const double y = stage_y(problem, grid, noise, history, j);
    cache.drift_at_stage.push_back(problem.drift(y));
    cache.drift_node.push_back(t_prev + tau * h);
    cache.sigma_hist.push_back(problem.diffusion(history[j - 1]));
    cache.dsigma_hist.push_back(problem.diffusion_derivative(history[j - 1]));

    Eigen::ArrayXd row = Eigen::ArrayXd::Zero(grid.refine_factor);
    if (with_inner) {
        std::vector<double> drift_hist(j), sigma_hist(j);
        for (std::int64_t k = 0; k < j; ++k) {
            drift_hist[k] = problem.drift(history[k]);
            sigma_hist[k] = problem.diffusion(history[k]);
        }
        const std::int64_t base = (j - 1) * grid.refine_factor;
        for (std::int64_t m = 1; m < grid.refine_factor; ++m) {
            const double s = grid.fine_time(base + m);
            double acc = 0.0;
            for (std::int64_t k = 1; k < j; ++k) {
                acc += difference_kernel_sum(
                    problem.alpha, s, t_prev, grid.coarse_time(k - 1),
                    grid.coarse_time(k), drift_hist[k - 1], noise, Against::Time);
            }
            acc += local_singular_sum(problem.alpha, s, t_prev,
                                      drift_hist[j - 1], noise, Against::Time);
            for (std::int64_t k = 1; k < j; ++k) {
                acc += difference_kernel_sum(
                    problem.beta, s, t_prev, grid.coarse_time(k - 1),
                    grid.coarse_time(k), sigma_hist[k - 1], noise,
                    Against::Brownian);
            }
            acc += local_singular_sum(problem.beta, s, t_prev,
                                      sigma_hist[j - 1], noise,
                                      Against::Brownian);
            row[m] = acc;
        }
    }
    cache.inner.push_back(std::move(row));
}

} // namespace

double stage_y(const SvieProblem& problem, const GridSpec& grid,
               const FineNoise& noise, std::span<const double> history,
               std::int64_t j) {
    if (j < 1 || j > grid.coarse_n) {
        throw std::invalid_argument("stage index out of range");
    }
    if (static_cast<std::int64_t>(history.size()) != j) {
        throw std::invalid_argument("stage_y needs history X_0..X_{j-1}");
    }
    const double h = grid.coarse_step();
    const double t_prev = grid.coarse_time(j - 1);
    const double tau = tau_for_step(noise, grid.coarse_n, j);
    const double node = t_prev + tau * h;

    double y = history[j - 1];
    for (std::int64_t i = 1; i < j; ++i) {
        y += difference_kernel_sum(problem.alpha, node, t_prev,
                                   grid.coarse_time(i - 1), grid.coarse_time(i),
                                   problem.drift(history[i - 1]), noise,
                                   Against::Time);
    }
    for (std::int64_t i = 1; i < j; ++i) {
        y += difference_kernel_sum(problem.beta, node, t_prev,
                                   grid.coarse_time(i - 1), grid.coarse_time(i),
                                   problem.diffusion(history[i - 1]), noise,
                                   Against::Brownian);
    }
    y += problem.drift(history[j - 1]) *
         integral_power_kernel(problem.alpha, node, t_prev, node);

    const std::int64_t cells = truncated_cells(grid, j, tau, node);
    if (cells > 0) {
        const double trunc = grid.fine_time((j - 1) * grid.refine_factor + cells);
        y += singular_ito_sum(problem.beta, node, t_prev, trunc,
                              problem.diffusion(history[j - 1]), noise);
    }
    return y;
}

void fill_stage(const SvieProblem& problem, const GridSpec& grid,
                const FineNoise& noise, std::span<const double> history,
                StageCache& cache, std::int64_t j) {
    if (static_cast<std::int64_t>(history.size()) != j) {
        throw std::invalid_argument("fill_stage needs history X_0..X_{j-1}");
    }
    fill_stage_impl(problem, grid, noise, history, cache, j, true);
}

double step_x(const SvieProblem& problem, const GridSpec& grid,
              const FineNoise& noise, std::span<const double> history,
              const StageCache& cache, std::int64_t n) {
    if (static_cast<std::int64_t>(history.size()) != n) {
        throw std::invalid_argument("step_x needs history X_0..X_{n-1}");
    }
    if (cache.steps() < n) {
        throw std::invalid_argument("stage cache is missing entries for step n");
    }
    const double t_n = grid.coarse_time(n);
    double x = history[0];
    x += randomized_drift_sum(grid, problem.alpha.value(), t_n, cache, n);
    x += plain_diffusion_sum(problem, grid, noise, t_n, cache.sigma_hist, n);
    x += correction_sum(problem, grid, noise, t_n, cache, n);
    return x;
}

Trajectory simulate(const SvieProblem& problem, const GridSpec& grid,
                    const FineNoise& noise, Scheme scheme,
                    const SimulateOptions& options) {
    const bool randomized = scheme != Scheme::ClassicalEM;
    check_noise_covers(grid, noise, randomized);

    const std::int64_t n_steps = grid.coarse_n;
    Trajectory traj;
    traj.level = n_steps;
    traj.scheme_tag = scheme;
    traj.values.resize(n_steps + 1);
    traj.values[0] = problem.x0;

    if (scheme == Scheme::ClassicalEM) {
        // Left-point drift with exact kernel weights; no predictor stage.
        for (std::int64_t n = 1; n <= n_steps; ++n) {
            const double t_n = grid.coarse_time(n);
            double x = problem.x0;
            for (std::int64_t j = 1; j <= n; ++j) {
                x += problem.drift(traj.values[j - 1]) *
                     integral_power_kernel(problem.alpha, t_n,
                                           grid.coarse_time(j - 1),
                                           grid.coarse_time(j));
            }
            for (std::int64_t j = 1; j <= n; ++j) {
                x += singular_ito_sum(problem.beta, t_n, grid.coarse_time(j - 1),
                                      grid.coarse_time(j),
                                      problem.diffusion(traj.values[j - 1]),
                                      noise);
            }
            traj.values[n] = x;
        }
        return traj;
    }

    const bool milstein = scheme == Scheme::RandomizedMilstein;
    const auto advance = [&](std::span<const double> history,
                             const StageCache& stages, std::int64_t n) {
        if (milstein) return step_x(problem, grid, noise, history, stages, n);
        const double t_n = grid.coarse_time(n);
        return history[0] +
               randomized_drift_sum(grid, problem.alpha.value(), t_n, stages, n) +
               plain_diffusion_sum(problem, grid, noise, t_n,
                                   stages.sigma_hist, n);
    };

    StageCache cache;
    for (std::int64_t n = 1; n <= n_steps; ++n) {
        const std::span<const double> history(traj.values.data(),
                                              static_cast<std::size_t>(n));
        if (options.reuse_stage_cache) {
            fill_stage_impl(problem, grid, noise, history, cache, n, milstein);
            traj.values[n] = advance(history, cache, n);
        } else {
            StageCache fresh;
            for (std::int64_t j = 1; j <= n; ++j) {
                fill_stage_impl(problem, grid, noise, history.subspan(0, j),
                                fresh, j, milstein);
            }
            traj.values[n] = advance(history, fresh, n);
        }
    }
    return traj;
}

} // namespace svie
