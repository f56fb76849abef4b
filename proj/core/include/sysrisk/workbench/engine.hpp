#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sysrisk/complexity/series.hpp"
#include "sysrisk/workbench/scenario.hpp"
#include "sysrisk/workbench/store.hpp"

namespace sysrisk::workbench {

/// Scalar summary fields, ordered by name.
using Summary = std::map<std::string, double>;

struct RunResult {
  ScenarioKind kind;
  Summary summary;
  std::string primary_metric;
  nlohmann::json detail;  // kind-specific payload
};

/// Primary risk metric per kind; higher means riskier.
///   LOGISTIC        lyapunov_exponent
///   LOTKA_VOLTERRA  oscillation_amplitude
///   MARKET          max_drawdown
///   COMPLEXITY      score
std::string primary_metric(ScenarioKind kind);

/// Runs a config directly. The seed, when given, replaces the config's seed
/// (MARKET and synthetic COMPLEXITY only).
RunResult run_config(const ScenarioConfig& config, std::optional<std::uint64_t> seed = {});

/// Seeded Gaussian channels for a synthetic COMPLEXITY scenario.
complexity::MultivariateSeries synthetic_series(const ComplexityScenario& config,
                                                std::optional<std::uint64_t> seed = {});

enum class Verdict { RiskUp, RiskDown, Neutral };
std::string to_string(Verdict verdict);

inline constexpr double kVerdictDeadBand = 1e-9;

struct WhatIfResult {
  Summary baseline_summary;
  Summary variant_summary;
  Summary deltas;  // variant - baseline
  std::string primary_metric;
  Verdict verdict = Verdict::Neutral;
};

WhatIfResult what_if(const ScenarioConfig& config, const nlohmann::json& overrides,
                     std::optional<std::uint64_t> seed = {});

struct Candidate {
  std::string parameter;
  double step_fraction = 0.0;
  double value = 0.0;  // perturbed parameter value
  bool feasible = true;
  std::string error;   // set when infeasible
  double baseline_risk = 0.0;
  double resulting_risk = 0.0;
  double effect = 0.0; // resulting - baseline
};

struct CountermeasureRanking {
  std::string primary_metric;
  std::vector<Candidate> ranked;      // feasible, ascending resulting risk
  std::vector<Candidate> infeasible;
};

/// One-at-a-time search: each tunable parameter is scaled by (1 + fraction)
/// for every fraction. With several seeds, risk is the median over seeds.
/// Ties break on parameter name, then on fraction.
CountermeasureRanking propose_countermeasures(const ScenarioConfig& config,
                                              const std::vector<std::string>& tunable,
                                              const std::vector<double>& step_fractions,
                                              const std::vector<std::uint64_t>& seeds = {});

/// Store-backed entry points; errors are rethrown with the scenario id
/// prefixed to the message.
class Workbench {
 public:
  explicit Workbench(ScenarioStore& store) : store_(store) {}

  RunResult run_scenario(const std::string& id, std::optional<std::uint64_t> seed = {}) const;
  WhatIfResult what_if(const std::string& id, const nlohmann::json& overrides,
                       std::optional<std::uint64_t> seed = {}) const;
  CountermeasureRanking propose_countermeasures(
      const std::string& id, const std::vector<std::string>& tunable,
      const std::vector<double>& step_fractions,
      const std::vector<std::uint64_t>& seeds = {}) const;

  ScenarioStore& store() const noexcept { return store_; }

 private:
  ScenarioStore& store_;
};

nlohmann::json to_json(const RunResult& result);
nlohmann::json to_json(const WhatIfResult& result);
nlohmann::json to_json(const CountermeasureRanking& ranking);

}  // namespace sysrisk::workbench
