#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sysrisk/agents/life.hpp"
#include "sysrisk/agents/market.hpp"
#include "sysrisk/complexity/metrics.hpp"
#include "sysrisk/dynamics/logistic.hpp"
#include "sysrisk/dynamics/lotka_volterra.hpp"
#include "sysrisk/error.hpp"
#include "sysrisk/workbench/engine.hpp"
#include "sysrisk/workbench/store.hpp"

namespace sysrisk::service {

/// {"code": "...", "message": "...", "detail": "..."}; detail omitted when empty.
nlohmann::json error_json(ErrorCode code, const std::string& message,
                          const std::string& detail = {});
nlohmann::json error_json(const Error& error);

/// 400 validation, 404 not found, 422 degenerate input / diverged simulation,
/// 500 internal.
int http_status(ErrorCode code);

/// Environment variable naming the scenario store directory.
inline constexpr const char* kStoreEnv = "SYSRISK_STORE";
std::filesystem::path default_store_path();

struct LyapunovRequest {
  double r = 4.0;
  double x0 = 0.3;
  std::size_t n = 1000000;
  std::size_t n_transient = 1000;
};

struct LifeRequest {
  agents::LifeGrid grid{0, 0};
  std::size_t steps = 0;
};

struct ComplexityRequest {
  complexity::ComplexityOptions options;
  double sigma_limit = 1.0;
  double tail_fraction = 0.01;
};

/// Every CLI subcommand and HTTP endpoint goes through these methods, so both
/// front ends return identical payloads for identical inputs.
class Api {
 public:
  explicit Api(std::filesystem::path store_path, std::size_t step_cap = 50'000'000);

  nlohmann::json bifurcation(const dynamics::BifurcationScan& scan) const;
  nlohmann::json lyapunov(const LyapunovRequest& req) const;
  nlohmann::json lotka(const dynamics::LotkaVolterraParams& params) const;
  nlohmann::json life(const LifeRequest& req) const;
  nlohmann::json market(const agents::MarketConfig& config) const;
  nlohmann::json complexity(const complexity::MultivariateSeries& series,
                            const ComplexityRequest& req) const;

  nlohmann::json save_scenario(const nlohmann::json& body);
  nlohmann::json list_scenarios() const;
  nlohmann::json get_scenario(const std::string& id) const;
  nlohmann::json run_scenario(const std::string& id, std::optional<std::uint64_t> seed) const;
  nlohmann::json what_if(const std::string& id, const nlohmann::json& overrides,
                         std::optional<std::uint64_t> seed) const;
  nlohmann::json countermeasures(const std::string& id, const std::vector<std::string>& tunable,
                                 const std::vector<double>& step_fractions,
                                 const std::vector<std::uint64_t>& seeds) const;

  std::size_t step_cap() const noexcept { return step_cap_; }
  workbench::ScenarioStore& store() noexcept { return store_; }

 private:
  void check_steps(std::size_t steps, const char* field) const;

  workbench::ScenarioStore store_;
  workbench::Workbench bench_;
  std::size_t step_cap_;
};

// Request decoding shared by the front ends.
dynamics::LotkaVolterraParams lotka_from_json(const nlohmann::json& j);
agents::MarketConfig market_from_json(const nlohmann::json& j);

/// Named demo patterns: block, blinker, glider.
agents::LifeGrid life_pattern(const std::string& name, std::size_t width, std::size_t height);

}  // namespace sysrisk::service
