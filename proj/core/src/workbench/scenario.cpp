#include "sysrisk/workbench/scenario.hpp"

#include <cmath>
#include <set>
#include <type_traits>

#include "sysrisk/error.hpp"

namespace sysrisk::workbench {
namespace {

using nlohmann::json;

// Reads fields out of a JSON object, rejecting wrong types and, in finish(),
// keys that no field consumed.
class StrictReader {
 public:
  explicit StrictReader(const json& j) : j_(j) {
    if (!j_.is_object()) fail(ErrorCode::Validation, "config must be a JSON object", "config");
  }

  template <class T>
  void get(const char* key, T& out) {
    used_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return;
    const json& v = *it;
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) type_error(key, "a boolean");
      out = v.get<bool>();
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) type_error(key, "a number");
      out = v.get<double>();
    } else if constexpr (std::is_integral_v<T>) {
      if (v.is_number_unsigned()) {
        out = v.get<T>();
      } else if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
        out = static_cast<T>(v.get<std::int64_t>());
      } else if (v.is_number_float() && v.get<double>() >= 0.0 &&
                 std::floor(v.get<double>()) == v.get<double>() && v.get<double>() < 1.8e19) {
        out = static_cast<T>(v.get<double>());
      } else {
        type_error(key, "a non-negative integer");
      }
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) type_error(key, "a string");
      out = v.get<std::string>();
    } else {
      try {
        out = v.get<T>();
      } catch (const json::exception&) {
        type_error(key, "an object of numeric arrays");
      }
    }
  }

  void finish() const {
    for (const auto& [key, _] : j_.items())
      if (!used_.count(key)) fail(ErrorCode::Validation, "unknown config field '" + key + "'", key);
  }

 private:
  [[noreturn]] static void type_error(const char* key, const char* what) {
    fail(ErrorCode::Validation, std::string("field '") + key + "' must be " + what, key);
  }

  const json& j_;
  std::set<std::string> used_;
};

LogisticScenario decode_logistic(const json& j) {
  LogisticScenario c;
  StrictReader r(j);
  r.get("r", c.r);
  r.get("x0", c.x0);
  r.get("n_transient", c.n_transient);
  r.get("n", c.n);
  r.finish();
  return c;
}

dynamics::LotkaVolterraParams decode_lv(const json& j) {
  dynamics::LotkaVolterraParams c;
  StrictReader r(j);
  r.get("alpha", c.alpha);
  r.get("beta", c.beta);
  r.get("gamma", c.gamma);
  r.get("delta", c.delta);
  r.get("x0", c.x0);
  r.get("y0", c.y0);
  r.get("dt", c.dt);
  r.get("steps", c.steps);
  r.finish();
  return c;
}

agents::MarketConfig decode_market(const json& j) {
  agents::MarketConfig c;
  StrictReader r(j);
  r.get("n_fundamentalists", c.n_fundamentalists);
  r.get("n_chartists", c.n_chartists);
  r.get("fundamental_value", c.fundamental_value);
  r.get("chartist_memory", c.chartist_memory);
  r.get("noise_scale", c.noise_scale);
  r.get("liquidity", c.liquidity);
  r.get("max_leverage", c.max_leverage);
  r.get("steps", c.steps);
  r.get("seed", c.seed);
  r.get("fundamentalist_gain", c.fundamentalist_gain);
  r.get("chartist_gain", c.chartist_gain);
  r.get("chartist_threshold", c.chartist_threshold);
  r.get("initial_price", c.initial_price);
  r.get("meltdown_threshold", c.meltdown_threshold);
  r.finish();
  return c;
}

ComplexityScenario decode_complexity(const json& j) {
  ComplexityScenario c;
  StrictReader r(j);
  r.get("source", c.source);
  r.get("channels", c.channels);
  r.get("samples", c.samples);
  r.get("factor_loading", c.factor_loading);
  r.get("factor_scale", c.factor_scale);
  r.get("noise_scale", c.noise_scale);
  r.get("seed", c.seed);
  r.get("data", c.data);
  r.get("csv_path", c.csv_path);
  r.get("edge_threshold", c.edge_threshold);
  r.get("returns_mode", c.returns_mode);
  r.get("sigma_limit", c.sigma_limit);
  r.finish();
  return c;
}

void validate_logistic(const LogisticScenario& c) {
  require(c.r >= 0.0 && c.r <= 4.0, "r must lie in [0, 4]", "r");
  require(c.x0 >= 0.0 && c.x0 <= 1.0, "x0 must lie in [0, 1]", "x0");
  require(c.n >= 1000, "n must be at least 1000", "n");
}

void validate_complexity(const ComplexityScenario& c) {
  require(c.source == "synthetic" || c.source == "inline" || c.source == "csv",
          "source must be synthetic, inline or csv", "source");
  require(c.edge_threshold >= 0.0 && c.edge_threshold <= 1.0,
          "edge_threshold must lie in [0, 1]", "edge_threshold");
  require(c.sigma_limit > 0.0, "sigma_limit must be positive", "sigma_limit");
  if (c.source == "synthetic") {
    require(c.channels >= 2, "synthetic data needs at least 2 channels", "channels");
    require(c.samples >= 2, "synthetic data needs at least 2 samples", "samples");
    require(c.noise_scale >= 0.0, "noise_scale must be non-negative", "noise_scale");
    require(c.factor_scale >= 0.0, "factor_scale must be non-negative", "factor_scale");
    require(std::isfinite(c.factor_loading), "factor_loading must be finite", "factor_loading");
  } else if (c.source == "inline") {
    require(c.data.size() >= 2, "inline data needs at least 2 channels", "data");
  } else {
    require(!c.csv_path.empty(), "csv source needs csv_path", "csv_path");
  }
}

}  // namespace

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Logistic: return "LOGISTIC";
    case ScenarioKind::LotkaVolterra: return "LOTKA_VOLTERRA";
    case ScenarioKind::Market: return "MARKET";
    case ScenarioKind::Complexity: return "COMPLEXITY";
  }
  return "LOGISTIC";
}

ScenarioKind parse_kind(const std::string& text) {
  if (text == "LOGISTIC") return ScenarioKind::Logistic;
  if (text == "LOTKA_VOLTERRA") return ScenarioKind::LotkaVolterra;
  if (text == "MARKET") return ScenarioKind::Market;
  if (text == "COMPLEXITY") return ScenarioKind::Complexity;
  fail(ErrorCode::Validation, "unknown scenario kind '" + text + "'", "kind");
}

ScenarioKind kind_of(const ScenarioConfig& config) {
  return static_cast<ScenarioKind>(config.index());
}

void validate(const ScenarioConfig& config) {
  std::visit(
      [](const auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LogisticScenario>)
          validate_logistic(c);
        else if constexpr (std::is_same_v<T, ComplexityScenario>)
          validate_complexity(c);
        else if constexpr (std::is_same_v<T, agents::MarketConfig>)
          agents::validate(c);
        else
          dynamics::validate(c);
      },
      config);
}

ScenarioConfig config_from_json(ScenarioKind kind, const nlohmann::json& j) {
  ScenarioConfig out;
  switch (kind) {
    case ScenarioKind::Logistic: out = decode_logistic(j); break;
    case ScenarioKind::LotkaVolterra: out = decode_lv(j); break;
    case ScenarioKind::Market: out = decode_market(j); break;
    case ScenarioKind::Complexity: out = decode_complexity(j); break;
  }
  validate(out);
  return out;
}

nlohmann::json config_to_json(const ScenarioConfig& config) {
  return std::visit(
      [](const auto& c) -> json {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LogisticScenario>) {
          return {{"r", c.r}, {"x0", c.x0}, {"n_transient", c.n_transient}, {"n", c.n}};
        } else if constexpr (std::is_same_v<T, dynamics::LotkaVolterraParams>) {
          return {{"alpha", c.alpha}, {"beta", c.beta}, {"gamma", c.gamma}, {"delta", c.delta},
                  {"x0", c.x0},       {"y0", c.y0},     {"dt", c.dt},       {"steps", c.steps}};
        } else if constexpr (std::is_same_v<T, agents::MarketConfig>) {
          return {{"n_fundamentalists", c.n_fundamentalists},
                  {"n_chartists", c.n_chartists},
                  {"fundamental_value", c.fundamental_value},
                  {"chartist_memory", c.chartist_memory},
                  {"noise_scale", c.noise_scale},
                  {"liquidity", c.liquidity},
                  {"max_leverage", c.max_leverage},
                  {"steps", c.steps},
                  {"seed", c.seed},
                  {"fundamentalist_gain", c.fundamentalist_gain},
                  {"chartist_gain", c.chartist_gain},
                  {"chartist_threshold", c.chartist_threshold},
                  {"initial_price", c.initial_price},
                  {"meltdown_threshold", c.meltdown_threshold}};
        } else {
          return {{"source", c.source},
                  {"channels", c.channels},
                  {"samples", c.samples},
                  {"factor_loading", c.factor_loading},
                  {"factor_scale", c.factor_scale},
                  {"noise_scale", c.noise_scale},
                  {"seed", c.seed},
                  {"data", c.data},
                  {"csv_path", c.csv_path},
                  {"edge_threshold", c.edge_threshold},
                  {"returns_mode", c.returns_mode},
                  {"sigma_limit", c.sigma_limit}};
        }
      },
      config);
}

ScenarioDefinition definition_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(ErrorCode::Validation, "scenario must be a JSON object", "scenario");
  auto text = [&](const char* key) -> std::string {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return {};
    if (!it->is_string()) fail(ErrorCode::Validation, std::string(key) + " must be a string", key);
    return it->get<std::string>();
  };
  for (const auto& [key, _] : j.items()) {
    static const std::set<std::string> known{"id", "name", "kind", "config", "created_at", "version"};
    if (!known.count(key)) fail(ErrorCode::Validation, "unknown scenario field '" + key + "'", key);
  }
  ScenarioDefinition def;
  def.id = text("id");
  def.name = text("name");
  const std::string kind = text("kind");
  if (kind.empty()) fail(ErrorCode::Validation, "scenario kind is required", "kind");
  def.config = config_from_json(parse_kind(kind), j.value("config", json::object()));
  def.created_at = text("created_at");
  if (auto it = j.find("version"); it != j.end()) {
    if (!it->is_number_unsigned()) fail(ErrorCode::Validation, "version must be a non-negative integer", "version");
    def.version = it->get<std::uint64_t>();
  }
  return def;
}

nlohmann::json to_json(const ScenarioDefinition& def) {
  return {{"id", def.id},
          {"name", def.name},
          {"kind", to_string(def.kind())},
          {"config", config_to_json(def.config)},
          {"created_at", def.created_at},
          {"version", def.version}};
}

ScenarioConfig apply_overrides(const ScenarioConfig& config, const nlohmann::json& overrides) {
  if (overrides.is_null()) return config;
  if (!overrides.is_object())
    fail(ErrorCode::Validation, "overrides must be a JSON object", "overrides");
  json j = config_to_json(config);
  for (const auto& [key, value] : overrides.items()) {
    if (!j.contains(key)) {
      fail(ErrorCode::Validation,
           "unknown parameter '" + key + "' for " + to_string(kind_of(config)), key);
    }
    j[key] = value;
  }
  return config_from_json(kind_of(config), j);
}

}  // namespace sysrisk::workbench
