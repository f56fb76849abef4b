#include "sysrisk/complexity/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "sysrisk/error.hpp"

namespace sysrisk::complexity {
namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? std::string{} : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

bool is_time_column(std::string name) {
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return name == "timestamp" || name == "time" || name == "t" || name == "date";
}

double parse_number(const std::string& s, std::size_t row, const std::string& column) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || s.empty()) {
    fail(ErrorCode::Validation,
         "non-numeric value '" + s + "' at data row " + std::to_string(row), column);
  }
  return v;
}

}  // namespace

MultivariateSeries::MultivariateSeries(std::vector<std::string> names,
                                       std::vector<std::vector<double>> samples,
                                       double timestep)
    : names_(std::move(names)), samples_(std::move(samples)), timestep_(timestep) {
  require(!names_.empty(), "series needs at least one channel", "channels");
  require(names_.size() == samples_.size(), "one sample vector per channel name", "channels");
  require(timestep_ > 0.0 && std::isfinite(timestep_), "timestep must be positive", "timestep");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    require(seen.insert(names_[i]).second, "duplicate channel name '" + names_[i] + "'",
            names_[i]);
    require(samples_[i].size() >= 2, "channels need at least 2 samples", names_[i]);
    require(samples_[i].size() == samples_.front().size(), "channels must have equal length",
            names_[i]);
    for (double v : samples_[i])
      require(std::isfinite(v), "channel values must be finite", names_[i]);
  }
}

MultivariateSeries MultivariateSeries::differenced() const {
  std::vector<std::vector<double>> diff(samples_.size());
  for (std::size_t c = 0; c < samples_.size(); ++c) {
    const auto& s = samples_[c];
    diff[c].resize(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) diff[c][i - 1] = s[i] - s[i - 1];
  }
  return MultivariateSeries(names_, std::move(diff), timestep_);
}

MultivariateSeries parse_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCode::Validation, "CSV input is empty", "csv");
  auto header = split_row(line);
  const std::size_t first = !header.empty() && is_time_column(header.front()) ? 1 : 0;
  std::vector<std::string> names(header.begin() + static_cast<std::ptrdiff_t>(first), header.end());
  require(!names.empty(), "CSV header has no data channels", "csv");

  std::vector<std::vector<double>> samples(names.size());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++row;
    auto fields = split_row(line);
    if (fields.size() != header.size()) {
      fail(ErrorCode::Validation,
           "data row " + std::to_string(row) + " has " + std::to_string(fields.size()) +
               " fields, header has " + std::to_string(header.size()),
           "csv");
    }
    for (std::size_t c = 0; c < names.size(); ++c)
      samples[c].push_back(parse_number(fields[c + first], row, names[c]));
  }
  return MultivariateSeries(std::move(names), std::move(samples));
}

MultivariateSeries parse_series_csv(const std::string& text) {
  std::istringstream in(text);
  return parse_series_csv(in);
}

}  // namespace sysrisk::complexity
