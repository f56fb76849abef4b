#include "sysrisk/dynamics/lotka_volterra.hpp"

#include <array>
#include <cmath>
#include <string>

#include "sysrisk/error.hpp"

namespace sysrisk::dynamics {
namespace {

using State = std::array<double, 2>;

State derivative(const LotkaVolterraParams& p, const State& s) {
  const double x = s[0], y = s[1];
  return {p.alpha * x - p.beta * x * y, p.delta * x * y - p.gamma * y};
}

State axpy(const State& s, double h, const State& k) {
  return {s[0] + h * k[0], s[1] + h * k[1]};
}

}  // namespace

void validate(const LotkaVolterraParams& p) {
  require(p.alpha > 0.0, "alpha must be positive", "alpha");
  require(p.beta > 0.0, "beta must be positive", "beta");
  require(p.gamma > 0.0, "gamma must be positive", "gamma");
  require(p.delta > 0.0, "delta must be positive", "delta");
  require(p.x0 > 0.0, "x0 must be positive", "x0");
  require(p.y0 > 0.0, "y0 must be positive", "y0");
  require(p.dt > 0.0 && std::isfinite(p.dt), "dt must be positive", "dt");
}

Orbit integrate_lotka_volterra(const LotkaVolterraParams& p) {
  validate(p);
  Orbit orbit(2, TimeBase::Continuous, p.dt);
  orbit.reserve(p.steps + 1);
  State s{p.x0, p.y0};
  orbit.push_back(s);
  const double h = p.dt;
  for (std::size_t i = 0; i < p.steps; ++i) {
    const State k1 = derivative(p, s);
    const State k2 = derivative(p, axpy(s, h / 2, k1));
    const State k3 = derivative(p, axpy(s, h / 2, k2));
    const State k4 = derivative(p, axpy(s, h, k3));
    for (int d = 0; d < 2; ++d) s[d] += h / 6 * (k1[d] + 2 * k2[d] + 2 * k3[d] + k4[d]);
    if (!(s[0] > 0.0 && s[1] > 0.0 && std::isfinite(s[0]) && std::isfinite(s[1]))) {
      fail(ErrorCode::SimDiverged,
           "Lotka-Volterra state left the positive quadrant at step " +
               std::to_string(i + 1) + " (dt too large)",
           "dt");
    }
    orbit.push_back(s);
  }
  return orbit;
}

double lotka_volterra_invariant(const LotkaVolterraParams& p, double x, double y) {
  return p.delta * x - p.gamma * std::log(x) + p.beta * y - p.alpha * std::log(y);
}

}  // namespace sysrisk::dynamics
