#include "sysrisk/agents/market.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sysrisk/error.hpp"
#include "sysrisk/rng.hpp"

namespace sysrisk::agents {

void validate(const MarketConfig& c) {
  require(c.n_fundamentalists + c.n_chartists >= 1, "market needs at least one agent",
          "n_chartists");
  require(c.fundamental_value > 0.0 && std::isfinite(c.fundamental_value),
          "fundamental_value must be positive", "fundamental_value");
  require(c.chartist_memory >= 1, "chartist_memory must be at least 1", "chartist_memory");
  require(c.noise_scale >= 0.0 && std::isfinite(c.noise_scale),
          "noise_scale must be non-negative", "noise_scale");
  require(c.liquidity > 0.0 && std::isfinite(c.liquidity), "liquidity must be positive",
          "liquidity");
  require(c.max_leverage >= 0.0 && std::isfinite(c.max_leverage),
          "max_leverage must be non-negative", "max_leverage");
  require(c.steps >= 1, "steps must be at least 1", "steps");
  require(c.fundamentalist_gain >= 0.0, "fundamentalist_gain must be non-negative",
          "fundamentalist_gain");
  require(c.chartist_gain >= 0.0, "chartist_gain must be non-negative", "chartist_gain");
  require(c.chartist_threshold >= 0.0, "chartist_threshold must be non-negative",
          "chartist_threshold");
  require(std::isfinite(c.initial_price), "initial_price must be finite", "initial_price");
  require(c.meltdown_threshold < 0.0, "meltdown_threshold must be negative",
          "meltdown_threshold");
}

MarketConfig stress_market_config() { return MarketConfig{}; }

MarketSimResult run_market_sim(const MarketConfig& c) {
  validate(c);
  Rng rng(c.seed);

  std::vector<double> thresholds(c.n_chartists);
  for (auto& t : thresholds) t = c.chartist_threshold * (1.0 + rng.exponential());
  std::vector<double> chartist_pos(c.n_chartists, 0.0);

  const double log_value = std::log(c.fundamental_value);
  const double p0 = c.initial_price > 0.0 ? c.initial_price : c.fundamental_value;
  const double impact =
      1.0 / (static_cast<double>(c.n_fundamentalists + c.n_chartists) * c.liquidity);

  std::vector<double> log_prices;
  log_prices.reserve(c.steps + 1);
  log_prices.push_back(std::log(p0));

  MarketSimResult out;
  out.prices.reserve(c.steps + 1);
  out.log_returns.reserve(c.steps);
  out.agent_wealth.reserve(c.steps + 1);
  out.prices.push_back(p0);

  // Every agent starts with fundamental_value in cash and no position.
  double cash = c.fundamental_value * static_cast<double>(c.n_fundamentalists + c.n_chartists);
  double position = 0.0;
  out.agent_wealth.push_back(cash);

  for (std::size_t t = 0; t < c.steps; ++t) {
    const double l = log_prices.back();
    const double price = out.prices.back();
    const std::size_t lag = t >= c.chartist_memory ? t - c.chartist_memory : 0;
    const double trend = (l - log_prices[lag]) / static_cast<double>(c.chartist_memory);

    double net = 0.0;
    for (std::size_t i = 0; i < c.n_fundamentalists; ++i)
      net += c.fundamentalist_gain * (log_value - l) + c.noise_scale * rng.normal();

    for (std::size_t i = 0; i < c.n_chartists; ++i) {
      const double size = 1.0 + c.noise_scale * rng.normal();
      double target = 0.0;
      if (std::fabs(trend) > thresholds[i])
        target = std::clamp(c.chartist_gain * trend * size, -c.max_leverage, c.max_leverage);
      net += target - chartist_pos[i];
      chartist_pos[i] = target;
    }

    cash -= net * price;
    position += net;

    const double r = net * impact;
    const double next_l = l + r;
    const double next_price = price * std::exp(r);
    if (!std::isfinite(next_l) || !std::isfinite(next_price) || next_price <= 0.0) {
      fail(ErrorCode::SimDiverged,
           "market simulation diverged at step " + std::to_string(t + 1), "steps");
    }
    log_prices.push_back(next_l);
    out.prices.push_back(next_price);
    out.log_returns.push_back(r);
    out.agent_wealth.push_back(cash + position * next_price);
    if (r < c.meltdown_threshold) out.meltdown_events.push_back(t);
  }
  return out;
}

double max_drawdown(const MarketSimResult& result) {
  double worst = 0.0;
  for (double r : result.log_returns) worst = std::max(worst, -r);
  return worst;
}

}  // namespace sysrisk::agents
