#include "sysrisk/dynamics/logistic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "sysrisk/error.hpp"

namespace sysrisk::dynamics {
namespace {

void check_r(double r) {
  if (!(r >= 0.0 && r <= 4.0)) fail(ErrorCode::Validation, "r must lie in [0, 4]", "r");
}

void check_x(double x, const char* field) {
  if (!(x >= 0.0 && x <= 1.0)) fail(ErrorCode::Validation, "state must lie in [0, 1]", field);
}

// ln|f'(x)| floored so superstable points (f'(x) == 0) stay finite.
double log_derivative(double r, double x) {
  const double d = std::fabs(r * (1.0 - 2.0 * x));
  return std::log(std::max(d, std::numeric_limits<double>::min()));
}

double advance(double r, double x, std::size_t steps) {
  for (std::size_t i = 0; i < steps; ++i) x = logistic_step(r, x);
  return x;
}

// Running means at 90% and 100% of the samples.
bool tail_windows_agree(double sum_at_90, std::size_t n_at_90, double sum_total,
                        std::size_t n_total) {
  const double a = sum_at_90 / static_cast<double>(n_at_90);
  const double b = sum_total / static_cast<double>(n_total);
  return std::isfinite(b) && std::fabs(a - b) < kLyapunovWindowTolerance;
}

}  // namespace

void validate(const LogisticParams& p) {
  check_r(p.r);
  check_x(p.x0, "x0");
  require(p.n_keep >= 1, "n_keep must be at least 1", "n_keep");
}

Orbit iterate_logistic(const LogisticParams& p) {
  validate(p);
  Orbit orbit(1, TimeBase::Discrete);
  orbit.reserve(p.n_keep);
  double x = advance(p.r, p.x0, p.n_transient);
  for (std::size_t i = 0; i < p.n_keep; ++i) {
    x = logistic_step(p.r, x);
    orbit.push_back(x);
  }
  return orbit;
}

std::vector<double> deduplicate(std::vector<double> values, double tol) {
  std::sort(values.begin(), values.end());
  std::vector<double> reps;
  for (double v : values) {
    if (reps.empty() || v - reps.back() > tol) reps.push_back(v);
  }
  return reps;
}

BifurcationDiagram bifurcation_scan(const BifurcationScan& scan) {
  check_r(scan.r_min);
  check_r(scan.r_max);
  check_x(scan.x0, "x0");
  require(scan.r_min < scan.r_max, "r_min must be below r_max", "r_min");
  require(scan.r_count >= 2, "r_count must be at least 2", "r_count");
  require(scan.n_keep >= 1, "n_keep must be at least 1", "n_keep");
  require(scan.dedup_tol >= 0.0, "dedup_tol must be non-negative", "dedup_tol");

  BifurcationDiagram diagram;
  diagram.r_values.resize(scan.r_count);
  diagram.asymptotic_sets.resize(scan.r_count);
  diagram.detected_period.resize(scan.r_count);

  const double step = (scan.r_max - scan.r_min) / static_cast<double>(scan.r_count - 1);
  for (std::size_t i = 0; i < scan.r_count; ++i) {
    diagram.r_values[i] = i + 1 == scan.r_count
                              ? scan.r_max
                              : scan.r_min + static_cast<double>(i) * step;
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scan.r_count; i = next++) {
      LogisticParams p{diagram.r_values[i], scan.x0, scan.n_transient, scan.n_keep};
      auto set = deduplicate(iterate_logistic(p).raw(), scan.dedup_tol);
      if (set.size() <= scan.period_cap) diagram.detected_period[i] = set.size();
      diagram.asymptotic_sets[i] = std::move(set);
    }
  };
  const unsigned n_threads =
      std::clamp<unsigned>(std::thread::hardware_concurrency(), 1u, 16u);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return diagram;
}

LyapunovEstimate lyapunov_logistic(double r, double x0, std::size_t n,
                                   std::size_t n_transient) {
  check_r(r);
  check_x(x0, "x0");
  require(n >= 1000, "n must be at least 1000", "n");

  const std::size_t n90 = n - n / 10;
  double x = advance(r, x0, n_transient);
  double sum = 0.0, sum90 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += log_derivative(r, x);
    if (i + 1 == n90) sum90 = sum;
    x = logistic_step(r, x);
  }
  LyapunovEstimate est;
  est.n_samples = n;
  est.exponent = sum / static_cast<double>(n);
  est.converged = tail_windows_agree(sum90, n90, sum, n);
  return est;
}

LyapunovEstimate lyapunov_twin_orbit(double r, double x0, std::size_t n,
                                     std::size_t n_transient, double d0) {
  check_r(r);
  check_x(x0, "x0");
  require(n >= 1000, "n must be at least 1000", "n");
  require(d0 > 0.0 && d0 <= 1e-3, "d0 must lie in (0, 1e-3]", "d0");

  const double floor = std::log(std::numeric_limits<double>::min());
  const std::size_t n90 = n - n / 10;
  double x = advance(r, x0, n_transient);
  double sum = 0.0, sum90 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = x + d0 <= 1.0 ? x + d0 : x - d0;
    const double fx = logistic_step(r, x);
    const double fy = logistic_step(r, y);
    const double d = std::fabs(fy - fx);
    sum += d > 0.0 ? std::log(d / d0) : floor;
    if (i + 1 == n90) sum90 = sum;
    x = fx;
  }
  LyapunovEstimate est;
  est.n_samples = n;
  est.exponent = sum / static_cast<double>(n);
  est.converged = tail_windows_agree(sum90, n90, sum, n);
  return est;
}

std::vector<double> sensitivity_divergence(const LogisticParams& p, double delta0) {
  validate(p);
  if (!(delta0 >= 0.0 && delta0 <= 1e-6))
    fail(ErrorCode::Validation, "delta0 must lie in [0, 1e-6]", "delta0");
  check_x(p.x0 + delta0, "x0");

  double a = p.x0, b = p.x0 + delta0;
  for (std::size_t i = 0; i < p.n_transient; ++i) {
    a = logistic_step(p.r, a);
    b = logistic_step(p.r, b);
  }
  std::vector<double> sep;
  sep.reserve(p.n_keep);
  for (std::size_t i = 0; i < p.n_keep; ++i) {
    a = logistic_step(p.r, a);
    b = logistic_step(p.r, b);
    sep.push_back(std::fabs(a - b));
  }
  return sep;
}

}  // namespace sysrisk::dynamics
