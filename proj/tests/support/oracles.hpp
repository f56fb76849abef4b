#pragma once

// Reference computations written independently of the library code.

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using CellSet = std::set<std::pair<long, long>>;

// Neighbour counting over a sparse set of live cells, dead outside the box.
inline CellSet life_step(const CellSet& alive, long w, long h) {
  CellSet next;
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      int n = 0;
      for (long dy = -1; dy <= 1; ++dy)
        for (long dx = -1; dx <= 1; ++dx)
          if ((dx || dy) && alive.count({x + dx, y + dy})) ++n;
      const bool live = alive.count({x, y}) > 0;
      if (n == 3 || (live && n == 2)) next.insert({x, y});
    }
  }
  return next;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double excess_kurtosis(const std::vector<double>& x) {
  long double m = 0;
  for (double v : x) m += v;
  m /= x.size();
  long double m2 = 0, m4 = 0;
  for (double v : x) {
    const long double d = (v - m) * (v - m);
    m2 += d;
    m4 += d * d;
  }
  m2 /= x.size();
  m4 /= x.size();
  return static_cast<double>(m4 / (m2 * m2) - 3.0L);
}

// Lower-tail probability of the worst return under a Gaussian fitted to the
// first `window` returns.
inline double early_gaussian_prob(const std::vector<double>& r, std::size_t window) {
  double m = 0;
  for (std::size_t i = 0; i < window; ++i) m += r[i];
  m /= static_cast<double>(window);
  double ss = 0;
  for (std::size_t i = 0; i < window; ++i) ss += (r[i] - m) * (r[i] - m);
  const double sd = std::sqrt(ss / static_cast<double>(window - 1));
  const double worst = *std::min_element(r.begin(), r.end());
  return 0.5 * std::erfc((m - worst) / (sd * std::sqrt(2.0)));
}

// Period-2 points of x -> r x (1 - x), valid for r > 3.
inline std::pair<double, double> logistic_period_two(double r) {
  const double s = std::sqrt((r + 1.0) * (r - 3.0));
  return {(r + 1.0 - s) / (2.0 * r), (r + 1.0 + s) / (2.0 * r)};
}

}  // namespace oracle
