#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sysrisk/dynamics/orbit.hpp"

namespace sysrisk::dynamics {

/// Parameters for x_{n+1} = r x_n (1 - x_n).
struct LogisticParams {
  double r = 3.0;
  double x0 = 0.5;
  std::size_t n_transient = 1000;
  std::size_t n_keep = 256;
};

/// Throws Error(Validation) unless 0<=r<=4, 0<=x0<=1 and n_keep>=1.
void validate(const LogisticParams& p);

inline double logistic_step(double r, double x) noexcept { return r * (x * (1.0 - x)); }

/// Discards n_transient iterates, then returns the next n_keep (x_1 is the
/// first value after x0).
Orbit iterate_logistic(const LogisticParams& p);

inline constexpr std::size_t kPeriodCap = 64;
inline constexpr double kDedupTolerance = 1e-6;

struct BifurcationScan {
  double r_min = 2.5;
  double r_max = 4.0;
  std::size_t r_count = 600;
  double x0 = 0.3;  // 0.5 maps to 1, then to the fixed point 0, at r = 4
  std::size_t n_transient = 10000;
  std::size_t n_keep = 256;
  double dedup_tol = kDedupTolerance;
  std::size_t period_cap = kPeriodCap;
};

struct BifurcationDiagram {
  std::vector<double> r_values;
  /// Sorted distinct retained states per r.
  std::vector<std::vector<double>> asymptotic_sets;
  /// Detected period per r; nullopt marks CHAOTIC.
  std::vector<std::optional<std::size_t>> detected_period;
};

/// Sorts and merges values closer than `tol` to the previous representative.
std::vector<double> deduplicate(std::vector<double> values, double tol);

/// Uniform r grid including both endpoints. Grid points are evaluated in
/// parallel; results are stored in grid order.
BifurcationDiagram bifurcation_scan(const BifurcationScan& scan);

struct LyapunovEstimate {
  double exponent = 0.0;  // nats per iteration
  std::size_t n_samples = 0;
  bool converged = false;
};

inline constexpr double kLyapunovWindowTolerance = 1e-3;

/// Derivative average: mean of ln|r (1 - 2 x_n)| over n iterates after the
/// transient. Converged iff the means of the last two 10% windows differ by
/// less than 1e-3. Requires n >= 1000.
LyapunovEstimate lyapunov_logistic(double r, double x0, std::size_t n,
                                   std::size_t n_transient = 1000);

/// Independent estimator: twin orbits at separation d0 renormalised every
/// step; the exponent is the mean of ln(d_k / d0).
LyapunovEstimate lyapunov_twin_orbit(double r, double x0, std::size_t n,
                                     std::size_t n_transient = 1000, double d0 = 1e-9);

/// |f^k(x0) - f^k(x0 + delta0)| for k = n_transient+1 .. n_transient+n_keep.
std::vector<double> sensitivity_divergence(const LogisticParams& p, double delta0);

}  // namespace sysrisk::dynamics
