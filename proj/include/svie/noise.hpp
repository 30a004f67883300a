#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "svie/grid.hpp"

namespace svie {

/// One realization of the two independent random inputs the scheme consumes:
/// a Brownian path as increments on the fine grid, and per-coarse-step
/// uniform draws tau_j for every coarse level under study.
///
/// Immutable after generation; regeneration from the same
/// (master_seed, path_index) reproduces identical contents.
struct FineNoise {
    double fine_step = 0.0;
    Eigen::ArrayXd increments;  // each ~ Normal(0, fine_step)
    std::map<std::int64_t, Eigen::ArrayXd> taus_by_level;

    std::uint64_t master_seed = 0;
    std::int64_t path_index = 0;

    std::int64_t total_fine() const { return increments.size(); }
};

/// Draw a fine Brownian path on `grid` plus tau draws for each coarse level
/// in `levels`. The Brownian stream and every tau stream are derived from
/// (master_seed, path_index, stream_tag), so they are mutually independent
/// and independent across paths.
FineNoise generate_fine_noise(std::uint64_t master_seed, std::int64_t path_index,
                              const GridSpec& grid,
                              const std::vector<std::int64_t>& levels);

/// Block-sum a fine increment sequence: element k of the result is the sum
/// of fine[k*factor .. (k+1)*factor), accumulated left to right so coarse
/// increments match fine partial sums bit-for-bit.
Eigen::ArrayXd coarsen_increments(const Eigen::Ref<const Eigen::ArrayXd>& fine,
                                  std::int64_t factor);

/// Stored tau_j for coarse step j (1-based) of the given level.
double tau_for_step(const FineNoise& noise, std::int64_t level, std::int64_t j);

} // namespace svie
