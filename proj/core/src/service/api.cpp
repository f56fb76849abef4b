#include "sysrisk/service/api.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "sysrisk/complexity/tail.hpp"
#include "sysrisk/dynamics/export.hpp"
#include "sysrisk/stats.hpp"
#include "sysrisk/workbench/scenario.hpp"

namespace sysrisk::service {

using nlohmann::json;

json error_json(ErrorCode code, const std::string& message, const std::string& detail) {
  json j = {{"code", to_string(code)}, {"message", message}};
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

json error_json(const Error& error) {
  return error_json(error.code(), error.what(), error.detail());
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::Validation: return 400;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::DegenerateInput:
    case ErrorCode::SimDiverged: return 422;
    case ErrorCode::Internal: return 500;
  }
  return 500;
}

std::filesystem::path default_store_path() {
  if (const char* env = std::getenv(kStoreEnv); env && *env) return env;
  return "scenarios";
}

dynamics::LotkaVolterraParams lotka_from_json(const json& j) {
  return std::get<dynamics::LotkaVolterraParams>(
      workbench::config_from_json(workbench::ScenarioKind::LotkaVolterra, j));
}

agents::MarketConfig market_from_json(const json& j) {
  return std::get<agents::MarketConfig>(
      workbench::config_from_json(workbench::ScenarioKind::Market, j));
}

agents::LifeGrid life_pattern(const std::string& name, std::size_t width, std::size_t height) {
  using agents::Cell;
  std::vector<Cell> cells;
  if (name == "block")
    cells = {{1, 1}, {2, 1}, {1, 2}, {2, 2}};
  else if (name == "blinker")
    cells = {{1, 2}, {2, 2}, {3, 2}};
  else if (name == "glider")
    cells = {{1, 0}, {2, 1}, {0, 2}, {1, 2}, {2, 2}};
  else
    fail(ErrorCode::Validation, "unknown life pattern '" + name + "'", "pattern");
  require(width >= 5 && height >= 5, "pattern grids need at least 5x5 cells", "width");
  return agents::LifeGrid(width, height, cells);
}

Api::Api(std::filesystem::path store_path, std::size_t step_cap)
    : store_(std::move(store_path)), bench_(store_), step_cap_(step_cap) {}

void Api::check_steps(std::size_t steps, const char* field) const {
  if (steps > step_cap_) {
    fail(ErrorCode::Validation,
         std::string(field) + " exceeds the service step cap of " + std::to_string(step_cap_),
         field);
  }
}

json Api::bifurcation(const dynamics::BifurcationScan& scan) const {
  check_steps(scan.r_count * (scan.n_transient + scan.n_keep), "r_count");
  json j = dynamics::to_json(dynamics::bifurcation_scan(scan));
  j["r_min"] = scan.r_min;
  j["r_max"] = scan.r_max;
  j["r_count"] = scan.r_count;
  return j;
}

json Api::lyapunov(const LyapunovRequest& req) const {
  check_steps(req.n + req.n_transient, "n");
  const auto est = dynamics::lyapunov_logistic(req.r, req.x0, req.n, req.n_transient);
  const auto twin = dynamics::lyapunov_twin_orbit(req.r, req.x0, req.n, req.n_transient);
  json j = dynamics::to_json(est);
  j["r"] = req.r;
  j["x0"] = req.x0;
  j["twin_orbit_exponent"] = twin.exponent;
  return j;
}

json Api::lotka(const dynamics::LotkaVolterraParams& params) const {
  check_steps(params.steps, "steps");
  const auto orbit = dynamics::integrate_lotka_volterra(params);
  const double v0 = dynamics::lotka_volterra_invariant(params, params.x0, params.y0);
  double drift = 0.0;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    auto s = orbit.state(i);
    drift = std::max(drift, std::fabs(dynamics::lotka_volterra_invariant(params, s[0], s[1]) - v0));
  }
  json j = dynamics::to_json(orbit);
  j["invariant_initial"] = v0;
  j["invariant_relative_drift"] = drift / std::fabs(v0);
  j["occupancy"] = dynamics::to_json(dynamics::occupancy_histogram(orbit, 20));
  return j;
}

json Api::life(const LifeRequest& req) const {
  check_steps(req.steps * req.grid.width() * req.grid.height(), "steps");
  const auto frames = agents::run_life(req.grid, req.steps);
  json texts = json::array();
  json populations = json::array();
  for (const auto& g : frames) {
    texts.push_back(agents::to_text(g));
    populations.push_back(g.population());
  }
  return {{"width", req.grid.width()},
          {"height", req.grid.height()},
          {"steps", req.steps},
          {"frames", std::move(texts)},
          {"population", std::move(populations)}};
}

json Api::market(const agents::MarketConfig& config) const {
  check_steps(config.steps * (config.n_chartists + config.n_fundamentalists), "steps");
  const auto res = agents::run_market_sim(config);
  json j = {{"config", workbench::config_to_json(config)},
            {"prices", res.prices},
            {"log_returns", res.log_returns},
            {"agent_wealth", res.agent_wealth},
            {"meltdown_events", res.meltdown_events},
            {"max_drawdown", agents::max_drawdown(res)},
            {"excess_kurtosis", stats::excess_kurtosis(res.log_returns)}};
  if (res.log_returns.size() >= 100 && !stats::is_constant(res.log_returns))
    j["tail_stats"] = complexity::to_json(complexity::tail_stats(res.log_returns));
  return j;
}

json Api::complexity(const complexity::MultivariateSeries& series,
                     const ComplexityRequest& req) const {
  return complexity::to_json(
      complexity::systemic_vs_individual(series, req.sigma_limit, req.options));
}

json Api::save_scenario(const json& body) {
  auto def = workbench::definition_from_json(body);
  return workbench::to_json(store_.save(std::move(def)));
}

json Api::list_scenarios() const {
  json out = json::array();
  for (const auto& s : store_.list()) {
    out.push_back({{"id", s.id},
                   {"name", s.name},
                   {"kind", workbench::to_string(s.kind)},
                   {"created_at", s.created_at},
                   {"version", s.version}});
  }
  return {{"scenarios", std::move(out)}};
}

json Api::get_scenario(const std::string& id) const { return workbench::to_json(store_.load(id)); }

json Api::run_scenario(const std::string& id, std::optional<std::uint64_t> seed) const {
  json j = workbench::to_json(bench_.run_scenario(id, seed));
  j["id"] = id;
  return j;
}

json Api::what_if(const std::string& id, const json& overrides,
                  std::optional<std::uint64_t> seed) const {
  json j = workbench::to_json(bench_.what_if(id, overrides, seed));
  j["id"] = id;
  return j;
}

json Api::countermeasures(const std::string& id, const std::vector<std::string>& tunable,
                          const std::vector<double>& step_fractions,
                          const std::vector<std::uint64_t>& seeds) const {
  json j = workbench::to_json(bench_.propose_countermeasures(id, tunable, step_fractions, seeds));
  j["id"] = id;
  return j;
}

}  // namespace sysrisk::service
