#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sysrisk/agents/market.hpp"
#include "sysrisk/dynamics/lotka_volterra.hpp"

namespace sysrisk::workbench {

enum class ScenarioKind { Logistic, LotkaVolterra, Market, Complexity };

std::string to_string(ScenarioKind kind);
/// Accepts LOGISTIC, LOTKA_VOLTERRA, MARKET, COMPLEXITY.
ScenarioKind parse_kind(const std::string& text);

struct LogisticScenario {
  double r = 3.0;
  double x0 = 0.5;
  std::size_t n_transient = 1000;
  std::size_t n = 100000;  // Lyapunov samples
  bool operator==(const LogisticScenario&) const = default;
};

/// Data for a COMPLEXITY scenario comes from exactly one source:
///   "synthetic"  seeded Gaussian channels x_i = factor_loading * f + noise_scale * e_i
///                (factor_loading 0 gives independent channels)
///   "inline"     `data`, channel name -> samples
///   "csv"        `csv_path`, read at run time
struct ComplexityScenario {
  std::string source = "synthetic";
  std::size_t channels = 10;
  std::size_t samples = 10000;
  double factor_loading = 0.0;
  double factor_scale = 1.0;
  double noise_scale = 1.0;
  std::uint64_t seed = 1;
  std::map<std::string, std::vector<double>> data;
  std::string csv_path;
  double edge_threshold = 0.5;
  bool returns_mode = false;
  double sigma_limit = 1.0;
  bool operator==(const ComplexityScenario&) const = default;
};

using ScenarioConfig = std::variant<LogisticScenario, dynamics::LotkaVolterraParams,
                                    agents::MarketConfig, ComplexityScenario>;

ScenarioKind kind_of(const ScenarioConfig& config);

struct ScenarioDefinition {
  std::string id;
  std::string name;
  ScenarioConfig config;
  std::string created_at;  // ISO-8601 UTC, microseconds
  std::uint64_t version = 0;

  ScenarioKind kind() const { return kind_of(config); }
  bool operator==(const ScenarioDefinition&) const = default;
};

/// Strict decoding: unknown keys and wrong types throw Error(Validation)
/// naming the key; missing keys take defaults; the decoded config is validated
/// against its kind.
ScenarioConfig config_from_json(ScenarioKind kind, const nlohmann::json& j);
nlohmann::json config_to_json(const ScenarioConfig& config);

/// Checks kind-specific invariants.
void validate(const ScenarioConfig& config);

/// {"id","name","kind","config","created_at","version"}; id/created_at/version
/// may be absent on input.
ScenarioDefinition definition_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ScenarioDefinition& def);

/// Applies a flat {"field": value} patch. Unknown fields throw
/// Error(Validation) with the key as detail.
ScenarioConfig apply_overrides(const ScenarioConfig& config, const nlohmann::json& overrides);

}  // namespace sysrisk::workbench
