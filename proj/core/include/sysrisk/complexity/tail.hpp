#pragma once

#include <cstddef>
#include <span>

#include <nlohmann/json.hpp>

namespace sysrisk::complexity {

struct TailStats {
  double excess_kurtosis = 0.0;
  double tail_exponent_estimate = 0.0;  // Hill estimator
  double tail_fraction = 0.0;
  std::size_t tail_count = 0;           // ceil(tail_fraction * n)
  /// Two-sided P(|X - mean| >= max |x - mean|) under the fitted Gaussian.
  double gaussian_tail_pvalue = 0.0;
};

/// Requires >= 100 samples, tail_fraction in (0, 0.5]. A constant series
/// throws Error(DegenerateInput).
TailStats tail_stats(std::span<const double> returns, double tail_fraction = 0.01);

/// Hill estimate from the k largest |x|: k / sum ln(X_(i) / X_(k+1)).
double hill_estimator(std::span<const double> x, std::size_t k);

nlohmann::json to_json(const TailStats& stats);

}  // namespace sysrisk::complexity
