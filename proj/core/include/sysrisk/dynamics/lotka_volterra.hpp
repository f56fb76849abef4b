#pragma once

#include <cstddef>

#include "sysrisk/dynamics/orbit.hpp"

namespace sysrisk::dynamics {

/// dx/dt = alpha x - beta x y,  dy/dt = delta x y - gamma y.
struct LotkaVolterraParams {
  double alpha = 2.0 / 3.0;
  double beta = 4.0 / 3.0;
  double gamma = 1.0;
  double delta = 1.0;
  double x0 = 1.5;
  double y0 = 0.5;
  double dt = 1e-3;
  std::size_t steps = 10000;

  bool operator==(const LotkaVolterraParams&) const = default;
};

void validate(const LotkaVolterraParams& p);

/// Fixed-step RK4. The orbit holds steps+1 states starting at (x0, y0).
/// Throws Error(SimDiverged) if a component turns non-positive or non-finite.
Orbit integrate_lotka_volterra(const LotkaVolterraParams& p);

/// First integral V = delta x - gamma ln x + beta y - alpha ln y.
double lotka_volterra_invariant(const LotkaVolterraParams& p, double x, double y);

}  // namespace sysrisk::dynamics
