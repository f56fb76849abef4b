#pragma once

#include <span>

namespace sysrisk::stats {

double mean(std::span<const double> x);

/// Sample variance with the n-1 denominator. Requires x.size() >= 2.
double sample_variance(std::span<const double> x);
/// True when every element equals the first (exact comparison).
bool is_constant(std::span<const double> x);
double sample_stddev(std::span<const double> x);

/// Fisher excess kurtosis m4/m2^2 - 3 from central moments (0 for a Gaussian).
double excess_kurtosis(std::span<const double> x);

/// Pearson correlation clamped into [-1, 1]. Returns 0 when either side is
/// constant.
double pearson(std::span<const double> x, std::span<const double> y);

/// Standard normal upper tail P(Z > z).
double normal_sf(double z);

double median(std::span<const double> x);

}  // namespace sysrisk::stats
