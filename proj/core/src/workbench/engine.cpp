#include "sysrisk/workbench/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "sysrisk/agents/market.hpp"
#include "sysrisk/complexity/metrics.hpp"
#include "sysrisk/complexity/tail.hpp"
#include "sysrisk/dynamics/export.hpp"
#include "sysrisk/dynamics/logistic.hpp"
#include "sysrisk/dynamics/lotka_volterra.hpp"
#include "sysrisk/dynamics/occupancy.hpp"
#include "sysrisk/error.hpp"
#include "sysrisk/rng.hpp"
#include "sysrisk/stats.hpp"

namespace sysrisk::workbench {
namespace {

using nlohmann::json;

constexpr std::size_t kTrajectoryPoints = 2000;
constexpr std::size_t kOccupancyBins = 20;

RunResult run_logistic(const LogisticScenario& c) {
  const auto est = dynamics::lyapunov_logistic(c.r, c.x0, c.n, c.n_transient);
  dynamics::LogisticParams p{c.r, c.x0, c.n_transient, 256};
  const auto orbit = dynamics::iterate_logistic(p);
  const auto set = dynamics::deduplicate(orbit.raw(), dynamics::kDedupTolerance);
  const bool chaotic = set.size() > dynamics::kPeriodCap;

  RunResult out{ScenarioKind::Logistic, {}, primary_metric(ScenarioKind::Logistic), {}};
  out.summary["lyapunov_exponent"] = est.exponent;
  out.summary["converged"] = est.converged ? 1.0 : 0.0;
  out.detail = {{"lyapunov", dynamics::to_json(est)},
                {"orbit_tail", orbit.raw()},
                {"period", chaotic ? json("CHAOTIC") : json(set.size())}};
  return out;
}

RunResult run_lv(const dynamics::LotkaVolterraParams& c) {
  const auto orbit = dynamics::integrate_lotka_volterra(c);
  const auto prey = orbit.component(0);
  const auto predator = orbit.component(1);
  const auto [pmin, pmax] = std::minmax_element(prey.begin(), prey.end());
  const auto [qmin, qmax] = std::minmax_element(predator.begin(), predator.end());

  const double v0 = dynamics::lotka_volterra_invariant(c, prey.front(), predator.front());
  double drift = 0.0;
  for (std::size_t i = 0; i < prey.size(); ++i)
    drift = std::max(drift, std::fabs(dynamics::lotka_volterra_invariant(c, prey[i], predator[i]) - v0));

  RunResult out{ScenarioKind::LotkaVolterra, {}, primary_metric(ScenarioKind::LotkaVolterra), {}};
  out.summary["oscillation_amplitude"] = (*pmax - *pmin) / 2.0;
  out.summary["prey_min"] = *pmin;
  out.summary["prey_max"] = *pmax;
  out.summary["predator_min"] = *qmin;
  out.summary["predator_max"] = *qmax;
  out.summary["invariant_drift"] = drift / std::fabs(v0);

  const std::size_t stride = std::max<std::size_t>(1, orbit.size() / kTrajectoryPoints);
  json trajectory = json::array();
  for (std::size_t i = 0; i < orbit.size(); i += stride) trajectory.push_back({prey[i], predator[i]});
  out.detail = {{"trajectory", std::move(trajectory)},
                {"stride", stride},
                {"occupancy", dynamics::to_json(dynamics::occupancy_histogram(orbit, kOccupancyBins))}};
  return out;
}

RunResult run_market(agents::MarketConfig c, std::optional<std::uint64_t> seed) {
  if (seed) c.seed = *seed;
  const auto res = agents::run_market_sim(c);

  RunResult out{ScenarioKind::Market, {}, primary_metric(ScenarioKind::Market), {}};
  out.summary["meltdown_count"] = static_cast<double>(res.meltdown_events.size());
  out.summary["excess_kurtosis"] = stats::excess_kurtosis(res.log_returns);
  out.summary["max_drawdown"] = agents::max_drawdown(res);
  out.summary["volatility"] = stats::sample_stddev(res.log_returns);
  out.summary["final_price"] = res.prices.back();
  out.detail = {{"seed", c.seed},
                {"prices", res.prices},
                {"meltdown_events", res.meltdown_events}};
  return out;
}

complexity::MultivariateSeries load_series(const ComplexityScenario& c,
                                           std::optional<std::uint64_t> seed) {
  if (c.source == "inline") {
    std::vector<std::string> names;
    std::vector<std::vector<double>> samples;
    for (const auto& [name, values] : c.data) {
      names.push_back(name);
      samples.push_back(values);
    }
    return {std::move(names), std::move(samples)};
  }
  if (c.source == "csv") {
    std::ifstream in(c.csv_path);
    if (!in) fail(ErrorCode::Validation, "cannot open csv_path " + c.csv_path, "csv_path");
    return complexity::parse_series_csv(in);
  }
  return synthetic_series(c, seed);
}

RunResult run_complexity(const ComplexityScenario& c, std::optional<std::uint64_t> seed) {
  complexity::ComplexityOptions opt;
  opt.edge_threshold = c.edge_threshold;
  opt.returns_mode = c.returns_mode;
  const auto cmp = complexity::systemic_vs_individual(load_series(c, seed), c.sigma_limit, opt);

  double max_sigma = 0.0;
  for (const auto& m : cmp.baseline) max_sigma = std::max(max_sigma, m.residual_sigma);

  RunResult out{ScenarioKind::Complexity, {}, primary_metric(ScenarioKind::Complexity), {}};
  out.summary["score"] = cmp.report.score;
  out.summary["edge_count"] = static_cast<double>(cmp.report.edges.size());
  out.summary["dropped_count"] = static_cast<double>(cmp.report.dropped_channels.size());
  out.summary["max_sigma"] = max_sigma;
  out.summary["systemic_flag"] = cmp.individually_calm_systemically_coupled ? 1.0 : 0.0;
  out.detail = complexity::to_json(cmp);
  return out;
}

Verdict verdict_for(double delta) {
  if (delta > kVerdictDeadBand) return Verdict::RiskUp;
  if (delta < -kVerdictDeadBand) return Verdict::RiskDown;
  return Verdict::Neutral;
}

double risk_over_seeds(const ScenarioConfig& config, const std::vector<std::uint64_t>& seeds) {
  const std::string metric = primary_metric(kind_of(config));
  if (seeds.empty()) return run_config(config).summary.at(metric);
  std::vector<double> values;
  values.reserve(seeds.size());
  for (auto s : seeds) values.push_back(run_config(config, s).summary.at(metric));
  return stats::median(values);
}

template <class F>
auto with_scenario_context(const std::string& id, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.code(), "scenario " + id + ": " + e.what(), e.detail());
  }
}

}  // namespace

complexity::MultivariateSeries synthetic_series(const ComplexityScenario& c,
                                                std::optional<std::uint64_t> seed) {
  Rng rng(seed.value_or(c.seed));
  std::vector<std::string> names;
  std::vector<std::vector<double>> samples(c.channels, std::vector<double>(c.samples));
  for (std::size_t k = 0; k < c.channels; ++k) names.push_back("c" + std::to_string(k));
  for (std::size_t t = 0; t < c.samples; ++t) {
    const double factor = c.factor_scale * rng.normal();
    for (std::size_t k = 0; k < c.channels; ++k)
      samples[k][t] = c.factor_loading * factor + c.noise_scale * rng.normal();
  }
  return {std::move(names), std::move(samples)};
}

std::string primary_metric(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Logistic: return "lyapunov_exponent";
    case ScenarioKind::LotkaVolterra: return "oscillation_amplitude";
    case ScenarioKind::Market: return "max_drawdown";
    case ScenarioKind::Complexity: return "score";
  }
  return "score";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::RiskUp: return "RISK_UP";
    case Verdict::RiskDown: return "RISK_DOWN";
    case Verdict::Neutral: return "NEUTRAL";
  }
  return "NEUTRAL";
}

RunResult run_config(const ScenarioConfig& config, std::optional<std::uint64_t> seed) {
  validate(config);
  return std::visit(
      [&](const auto& c) -> RunResult {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, LogisticScenario>)
          return run_logistic(c);
        else if constexpr (std::is_same_v<T, dynamics::LotkaVolterraParams>)
          return run_lv(c);
        else if constexpr (std::is_same_v<T, agents::MarketConfig>)
          return run_market(c, seed);
        else
          return run_complexity(c, seed);
      },
      config);
}

WhatIfResult what_if(const ScenarioConfig& config, const nlohmann::json& overrides,
                     std::optional<std::uint64_t> seed) {
  const ScenarioConfig variant = apply_overrides(config, overrides);
  const RunResult base = run_config(config, seed);
  const RunResult var = run_config(variant, seed);

  WhatIfResult out;
  out.primary_metric = base.primary_metric;
  out.baseline_summary = base.summary;
  out.variant_summary = var.summary;
  for (const auto& [key, value] : base.summary) out.deltas[key] = var.summary.at(key) - value;
  out.verdict = verdict_for(out.deltas.at(out.primary_metric));
  return out;
}

CountermeasureRanking propose_countermeasures(const ScenarioConfig& config,
                                              const std::vector<std::string>& tunable,
                                              const std::vector<double>& step_fractions,
                                              const std::vector<std::uint64_t>& seeds) {
  for (double f : step_fractions)
    require(f != 0.0 && std::isfinite(f), "step fractions must be finite and nonzero",
            "step_fractions");
  const json base_json = config_to_json(config);
  for (const auto& p : tunable) {
    auto it = base_json.find(p);
    if (it == base_json.end())
      fail(ErrorCode::Validation,
           "unknown parameter '" + p + "' for " + to_string(kind_of(config)), p);
    if (!it->is_number())
      fail(ErrorCode::Validation, "parameter '" + p + "' is not numeric", p);
  }

  CountermeasureRanking out;
  out.primary_metric = primary_metric(kind_of(config));
  if (tunable.empty() || step_fractions.empty()) return out;

  const double baseline_risk = risk_over_seeds(config, seeds);
  for (const auto& p : tunable) {
    const json& current = base_json.at(p);
    const bool integral = current.is_number_integer();
    for (double f : step_fractions) {
      Candidate c;
      c.parameter = p;
      c.step_fraction = f;
      c.baseline_risk = baseline_risk;
      double value = current.get<double>() * (1.0 + f);
      json patched;
      if (integral) {
        value = std::max(0.0, std::round(value));
        patched = static_cast<std::uint64_t>(value);
      } else {
        patched = value;
      }
      c.value = value;
      try {
        const ScenarioConfig variant = apply_overrides(config, json{{p, patched}});
        c.resulting_risk = risk_over_seeds(variant, seeds);
        c.effect = c.resulting_risk - baseline_risk;
        out.ranked.push_back(c);
      } catch (const Error& e) {
        c.feasible = false;
        c.error = e.what();
        out.infeasible.push_back(c);
      }
    }
  }
  std::stable_sort(out.ranked.begin(), out.ranked.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(a.resulting_risk, a.parameter, a.step_fraction) <
           std::tie(b.resulting_risk, b.parameter, b.step_fraction);
  });
  return out;
}

RunResult Workbench::run_scenario(const std::string& id, std::optional<std::uint64_t> seed) const {
  const auto def = store_.load(id);
  return with_scenario_context(id, [&] { return run_config(def.config, seed); });
}

WhatIfResult Workbench::what_if(const std::string& id, const nlohmann::json& overrides,
                                std::optional<std::uint64_t> seed) const {
  const auto def = store_.load(id);
  return with_scenario_context(id, [&] { return workbench::what_if(def.config, overrides, seed); });
}

CountermeasureRanking Workbench::propose_countermeasures(
    const std::string& id, const std::vector<std::string>& tunable,
    const std::vector<double>& step_fractions, const std::vector<std::uint64_t>& seeds) const {
  const auto def = store_.load(id);
  return with_scenario_context(id, [&] {
    return workbench::propose_countermeasures(def.config, tunable, step_fractions, seeds);
  });
}

nlohmann::json to_json(const RunResult& r) {
  return {{"kind", to_string(r.kind)},
          {"primary_metric", r.primary_metric},
          {"summary", r.summary},
          {"detail", r.detail}};
}

nlohmann::json to_json(const WhatIfResult& r) {
  return {{"primary_metric", r.primary_metric},
          {"baseline_summary", r.baseline_summary},
          {"variant_summary", r.variant_summary},
          {"deltas", r.deltas},
          {"verdict", to_string(r.verdict)}};
}

nlohmann::json to_json(const CountermeasureRanking& ranking) {
  auto encode = [](const Candidate& c) {
    json j = {{"parameter", c.parameter},
              {"step_fraction", c.step_fraction},
              {"value", c.value},
              {"status", c.feasible ? "FEASIBLE" : "INFEASIBLE"}};
    if (c.feasible) {
      j["baseline_risk"] = c.baseline_risk;
      j["resulting_risk"] = c.resulting_risk;
      j["effect"] = c.effect;
    } else {
      j["error"] = c.error;
    }
    return j;
  };
  json ranked = json::array(), infeasible = json::array();
  for (const auto& c : ranking.ranked) ranked.push_back(encode(c));
  for (const auto& c : ranking.infeasible) infeasible.push_back(encode(c));
  return {{"primary_metric", ranking.primary_metric},
          {"ranked", std::move(ranked)},
          {"infeasible", std::move(infeasible)}};
}

}  // namespace sysrisk::workbench
