#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sysrisk::complexity {

/// Equal-length named channels sampled on a uniform grid.
class MultivariateSeries {
 public:
  /// Throws Error(Validation) unless names are unique, every channel has the
  /// same length >= 2 and every value is finite.
  MultivariateSeries(std::vector<std::string> names, std::vector<std::vector<double>> samples,
                     double timestep = 1.0);

  std::size_t channels() const noexcept { return names_.size(); }
  std::size_t length() const noexcept { return samples_.empty() ? 0 : samples_.front().size(); }
  double timestep() const noexcept { return timestep_; }

  const std::vector<std::string>& names() const noexcept { return names_; }
  std::span<const double> channel(std::size_t i) const { return samples_[i]; }
  const std::vector<std::vector<double>>& samples() const noexcept { return samples_; }

  /// First differences of every channel (length - 1 samples).
  MultivariateSeries differenced() const;

  bool operator==(const MultivariateSeries&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<double>> samples_;
  double timestep_;
};

/// Header row of channel names, one row per sample. A first column named
/// "timestamp", "time", "t" or "date" is skipped (case-insensitive).
MultivariateSeries parse_series_csv(std::istream& in);
MultivariateSeries parse_series_csv(const std::string& text);

}  // namespace sysrisk::complexity
