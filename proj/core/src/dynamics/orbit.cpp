#include "sysrisk/dynamics/orbit.hpp"

#include "sysrisk/error.hpp"

namespace sysrisk::dynamics {

Orbit::Orbit(std::size_t dimension, TimeBase base, double dt)
    : dim_(dimension), base_(base), dt_(dt) {
  require(dimension >= 1, "orbit dimension must be at least 1", "dimension");
}

void Orbit::push_back(std::span<const double> state) {
  require(state.size() == dim_, "state dimension mismatch", "state");
  data_.insert(data_.end(), state.begin(), state.end());
}

void Orbit::push_back(double value) {
  require(dim_ == 1, "scalar push on a multi-dimensional orbit", "state");
  data_.push_back(value);
}

std::vector<double> Orbit::component(std::size_t d) const {
  std::vector<double> out;
  out.reserve(size());
  for (std::size_t i = d; i < data_.size(); i += dim_) out.push_back(data_[i]);
  return out;
}

}  // namespace sysrisk::dynamics
