#include "sysrisk/dynamics/export.hpp"

#include <iomanip>
#include <limits>

namespace sysrisk::dynamics {
namespace {

struct PrecisionGuard {
  explicit PrecisionGuard(std::ostream& out)
      : out_(out), old_(out.precision(std::numeric_limits<double>::max_digits10)) {}
  ~PrecisionGuard() { out_.precision(old_); }
  std::ostream& out_;
  std::streamsize old_;
};

}  // namespace

void write_csv(std::ostream& out, const Orbit& orbit) {
  PrecisionGuard guard(out);
  const bool continuous = orbit.time_base() == TimeBase::Continuous;
  out << (continuous ? "t" : "step");
  for (std::size_t d = 0; d < orbit.dimension(); ++d) out << ",x" << d;
  out << '\n';
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    if (continuous)
      out << static_cast<double>(i) * orbit.dt();
    else
      out << i;
    for (double v : orbit.state(i)) out << ',' << v;
    out << '\n';
  }
}

void write_csv(std::ostream& out, const BifurcationDiagram& diagram) {
  PrecisionGuard guard(out);
  out << "r,state,period\n";
  for (std::size_t i = 0; i < diagram.r_values.size(); ++i) {
    const auto& period = diagram.detected_period[i];
    for (double x : diagram.asymptotic_sets[i]) {
      out << diagram.r_values[i] << ',' << x << ',';
      if (period)
        out << *period;
      else
        out << "CHAOTIC";
      out << '\n';
    }
  }
}

nlohmann::json to_json(const Orbit& orbit) {
  nlohmann::json states = nlohmann::json::array();
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    auto s = orbit.state(i);
    states.push_back(std::vector<double>(s.begin(), s.end()));
  }
  return {{"dimension", orbit.dimension()},
          {"time_base", orbit.time_base() == TimeBase::Continuous ? "continuous" : "discrete"},
          {"dt", orbit.dt()},
          {"states", std::move(states)}};
}

nlohmann::json to_json(const BifurcationDiagram& diagram) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < diagram.r_values.size(); ++i) {
    const auto& period = diagram.detected_period[i];
    rows.push_back({{"r", diagram.r_values[i]},
                    {"states", diagram.asymptotic_sets[i]},
                    {"period", period ? nlohmann::json(*period) : nlohmann::json("CHAOTIC")}});
  }
  return {{"rows", std::move(rows)}};
}

nlohmann::json to_json(const LyapunovEstimate& estimate) {
  return {{"exponent", estimate.exponent},
          {"n_samples", estimate.n_samples},
          {"converged", estimate.converged}};
}

nlohmann::json to_json(const OccupancyHistogram& histogram) {
  return {{"bins_per_dim", histogram.bins_per_dim},
          {"bin_edges", histogram.bin_edges},
          {"probabilities", histogram.probabilities}};
}

}  // namespace sysrisk::dynamics
