#include "sysrisk/dynamics/superposition.hpp"

#include <cmath>

#include "sysrisk/error.hpp"

namespace sysrisk::dynamics {

SuperpositionVerdict test_superposition(const StateTransform& system,
                                        std::span<const double> u,
                                        std::span<const double> v, double a, double b,
                                        double tol) {
  require(u.size() == v.size(), "inputs u and v must have equal dimension", "v");
  require(tol >= 0.0, "tol must be non-negative", "tol");

  std::vector<double> combined(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) combined[i] = a * u[i] + b * v[i];

  const auto t_combined = system(combined);
  const auto t_u = system(u);
  const auto t_v = system(v);
  require(t_combined.size() == t_u.size() && t_u.size() == t_v.size(),
          "system output dimension changed between evaluations", "system");

  double ss = 0.0;
  for (std::size_t i = 0; i < t_u.size(); ++i) {
    const double r = t_combined[i] - a * t_u[i] - b * t_v[i];
    ss += r * r;
  }
  SuperpositionVerdict out;
  out.residual = std::sqrt(ss);
  out.verdict = out.residual <= tol ? Linearity::Linear : Linearity::Nonlinear;
  return out;
}

}  // namespace sysrisk::dynamics
