#include "sysrisk/dynamics/occupancy.hpp"

#include <algorithm>
#include <limits>

#include "sysrisk/error.hpp"

namespace sysrisk::dynamics {

OccupancyHistogram occupancy_histogram(const Orbit& orbit, std::size_t bins_per_dim) {
  require(!orbit.empty(), "orbit must be non-empty", "orbit");
  require(bins_per_dim >= 2, "bins_per_dim must be at least 2", "bins_per_dim");

  const std::size_t dim = orbit.dimension();
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    auto s = orbit.state(i);
    for (std::size_t d = 0; d < dim; ++d) {
      lo[d] = std::min(lo[d], s[d]);
      hi[d] = std::max(hi[d], s[d]);
    }
  }

  OccupancyHistogram h;
  h.bins_per_dim = bins_per_dim;
  h.bin_edges.resize(dim);
  std::size_t total_bins = 1;
  for (std::size_t d = 0; d < dim; ++d) {
    total_bins *= bins_per_dim;
    auto& edges = h.bin_edges[d];
    edges.resize(bins_per_dim + 1);
    const double width = (hi[d] - lo[d]) / static_cast<double>(bins_per_dim);
    for (std::size_t b = 0; b <= bins_per_dim; ++b) edges[b] = lo[d] + width * static_cast<double>(b);
    edges.back() = hi[d];
  }

  std::vector<std::size_t> counts(total_bins, 0);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    auto s = orbit.state(i);
    std::size_t flat = 0;
    for (std::size_t d = 0; d < dim; ++d) {
      std::size_t b = 0;
      const double extent = hi[d] - lo[d];
      if (extent > 0.0) {
        const double t = (s[d] - lo[d]) / extent * static_cast<double>(bins_per_dim);
        b = std::min(static_cast<std::size_t>(t), bins_per_dim - 1);
      }
      flat = flat * bins_per_dim + b;
    }
    ++counts[flat];
  }

  h.probabilities.resize(total_bins);
  const auto n = static_cast<double>(orbit.size());
  for (std::size_t k = 0; k < total_bins; ++k) h.probabilities[k] = static_cast<double>(counts[k]) / n;
  return h;
}

}  // namespace sysrisk::dynamics
