#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sysrisk {

// Portable seeded generator. std::mt19937_64 output is fixed by the standard;
// the std:: distributions are not, so variates are derived here:
//   uniform     53 high bits of one mt19937_64 draw, in [0, 1)
//   normal      Marsaglia polar method, spare value cached
//   exponential inversion, -ln(1 - u)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double scale = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * scale;
    has_spare_ = true;
    return u * scale;
  }

  double exponential(double mean = 1.0) { return -mean * std::log1p(-uniform()); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace sysrisk
