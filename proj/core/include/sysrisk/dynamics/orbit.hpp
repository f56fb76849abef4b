#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sysrisk::dynamics {

enum class TimeBase { Discrete, Continuous };

/// Sequence of fixed-dimension states. Discrete orbits index by iteration;
/// continuous ones carry the integration step in `dt`.
class Orbit {
 public:
  Orbit(std::size_t dimension, TimeBase base, double dt = 1.0);

  std::size_t dimension() const noexcept { return dim_; }
  std::size_t size() const noexcept { return dim_ == 0 ? 0 : data_.size() / dim_; }
  bool empty() const noexcept { return data_.empty(); }
  TimeBase time_base() const noexcept { return base_; }
  double dt() const noexcept { return dt_; }

  void reserve(std::size_t steps) { data_.reserve(steps * dim_); }
  void push_back(std::span<const double> state);
  void push_back(double value);  // dimension-1 shortcut

  std::span<const double> state(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }

  /// Component `d` of every state, copied out.
  std::vector<double> component(std::size_t d) const;

  const std::vector<double>& raw() const noexcept { return data_; }

  bool operator==(const Orbit&) const = default;

 private:
  std::size_t dim_;
  TimeBase base_;
  double dt_;
  std::vector<double> data_;
};

}  // namespace sysrisk::dynamics
