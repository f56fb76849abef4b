#pragma once

#include <cstddef>
#include <vector>

#include "sysrisk/dynamics/orbit.hpp"

namespace sysrisk::dynamics {

struct OccupancyHistogram {
  std::size_t bins_per_dim = 0;
  /// bins_per_dim + 1 edges per dimension.
  std::vector<std::vector<double>> bin_edges;
  /// Row-major over dimensions, first dimension slowest. Sums to 1.
  std::vector<double> probabilities;

  std::size_t dimension() const noexcept { return bin_edges.size(); }
};

/// Visit frequencies over the orbit's bounding box. A dimension with zero
/// extent puts all of its mass in bin 0.
OccupancyHistogram occupancy_histogram(const Orbit& orbit, std::size_t bins_per_dim);

}  // namespace sysrisk::dynamics
