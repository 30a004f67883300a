#include "svie/noise.hpp"

#include <cmath>
#include <stdexcept>

#include "svie/rng.hpp"

namespace svie {

FineNoise generate_fine_noise(std::uint64_t master_seed, std::int64_t path_index,
                              const GridSpec& grid,
                              const std::vector<std::int64_t>& levels) {
    if (levels.empty()) {
        throw std::invalid_argument("generate_fine_noise needs at least one level");
    }

    FineNoise noise;
    noise.master_seed = master_seed;
    noise.path_index = path_index;
    noise.fine_step = grid.fine_step();

    const auto path = static_cast<std::uint64_t>(path_index);
    const double scale = std::sqrt(noise.fine_step);

    noise.increments.resize(grid.total_fine());
    for (std::int64_t i = 0; i < grid.total_fine(); ++i) {
        noise.increments[i] =
            scale * rng::gaussian(master_seed, path, rng::kBrownianStream,
                                  static_cast<std::uint64_t>(i));
    }

    for (std::int64_t level : levels) {
        if (level < 1) {
            throw std::invalid_argument("coarse level must be >= 1");
        }
        auto [it, inserted] = noise.taus_by_level.try_emplace(level);
        if (!inserted) continue;
        Eigen::ArrayXd& taus = it->second;
        taus.resize(level);
        for (std::int64_t j = 1; j <= level; ++j) {
            taus[j - 1] = rng::uniform_open01(master_seed, path,
                                              rng::tau_stream(level),
                                              static_cast<std::uint64_t>(j));
        }
    }
    return noise;
}

Eigen::ArrayXd coarsen_increments(const Eigen::Ref<const Eigen::ArrayXd>& fine,
                                  std::int64_t factor) {
    if (factor < 1) {
        throw std::invalid_argument("coarsening factor must be >= 1");
    }
    if (fine.size() % factor != 0) {
        throw std::invalid_argument(
            "fine increment count is not divisible by the coarsening factor");
    }
    Eigen::ArrayXd coarse(fine.size() / factor);
    for (std::int64_t k = 0; k < coarse.size(); ++k) {
        double sum = 0.0;
        for (std::int64_t m = 0; m < factor; ++m) {
            sum += fine[k * factor + m];
        }
        coarse[k] = sum;
    }
    return coarse;
}

double tau_for_step(const FineNoise& noise, std::int64_t level, std::int64_t j) {
    auto it = noise.taus_by_level.find(level);
    if (it == noise.taus_by_level.end()) {
        throw std::invalid_argument("no tau draws stored for this coarse level");
    }
    if (j < 1 || j > it->second.size()) {
        throw std::invalid_argument("tau step index out of range");
    }
    return it->second[j - 1];
}

} // namespace svie
