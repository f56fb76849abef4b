#include "sysrisk/complexity/tail.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "sysrisk/error.hpp"
#include "sysrisk/stats.hpp"

namespace sysrisk::complexity {

double hill_estimator(std::span<const double> x, std::size_t k) {
  require(k >= 1 && k < x.size(), "Hill estimator needs 1 <= k < n", "tail_fraction");
  std::vector<double> mag(x.size());
  std::transform(x.begin(), x.end(), mag.begin(), [](double v) { return std::fabs(v); });
  std::partial_sort(mag.begin(), mag.begin() + static_cast<std::ptrdiff_t>(k + 1), mag.end(),
                    std::greater<>());
  const double threshold = mag[k];
  if (threshold <= 0.0) fail(ErrorCode::DegenerateInput, "tail threshold is zero", "returns");
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += std::log(mag[i] / threshold);
  if (s <= 0.0) fail(ErrorCode::DegenerateInput, "tail order statistics are tied", "returns");
  return static_cast<double>(k) / s;
}

TailStats tail_stats(std::span<const double> returns, double tail_fraction) {
  require(returns.size() >= 100, "tail statistics need at least 100 samples", "returns");
  require(tail_fraction > 0.0 && tail_fraction <= 0.5, "tail_fraction must lie in (0, 0.5]",
          "tail_fraction");
  for (double v : returns) require(std::isfinite(v), "returns must be finite", "returns");

  if (stats::is_constant(returns))
    fail(ErrorCode::DegenerateInput, "returns series is constant", "returns");

  TailStats out;
  out.tail_fraction = tail_fraction;
  out.tail_count = static_cast<std::size_t>(
      std::ceil(tail_fraction * static_cast<double>(returns.size())));
  out.excess_kurtosis = stats::excess_kurtosis(returns);
  out.tail_exponent_estimate = hill_estimator(returns, out.tail_count);

  const double sd = stats::sample_stddev(returns);
  const double m = stats::mean(returns);
  double worst = 0.0;
  for (double v : returns) worst = std::max(worst, std::fabs(v - m));
  out.gaussian_tail_pvalue = std::min(1.0, 2.0 * stats::normal_sf(worst / sd));
  return out;
}

nlohmann::json to_json(const TailStats& s) {
  return {{"excess_kurtosis", s.excess_kurtosis},
          {"tail_exponent_estimate", s.tail_exponent_estimate},
          {"tail_fraction", s.tail_fraction},
          {"tail_count", s.tail_count},
          {"gaussian_tail_pvalue", s.gaussian_tail_pvalue}};
}

}  // namespace sysrisk::complexity
