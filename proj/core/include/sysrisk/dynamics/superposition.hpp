#pragma once

#include <functional>
#include <span>
#include <vector>

namespace sysrisk::dynamics {

using StateTransform = std::function<std::vector<double>(std::span<const double>)>;

enum class Linearity { Linear, Nonlinear };

struct SuperpositionVerdict {
  Linearity verdict = Linearity::Linear;
  double residual = 0.0;  // Euclidean norm
};

/// residual = |T(a u + b v) - a T(u) - b T(v)|. Exceptions from the system
/// propagate unchanged.
SuperpositionVerdict test_superposition(const StateTransform& system,
                                        std::span<const double> u,
                                        std::span<const double> v, double a, double b,
                                        double tol);

}  // namespace sysrisk::dynamics
