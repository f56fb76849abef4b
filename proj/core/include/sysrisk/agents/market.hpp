#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sysrisk::agents {

/// Fundamentalist / chartist price-impact market.
///
/// Each step t with log price l_t and trend g_t = (l_t - l_{t-m}) / m:
///   fundamentalist   order = fundamentalist_gain * (ln F - l_t) + noise_scale * N(0,1)
///   chartist i       target = clamp(chartist_gain * g_t * (1 + noise_scale * N(0,1)),
///                                   -max_leverage, max_leverage)  if |g_t| > theta_i
///                    target = 0                                     otherwise
///                    order  = target - position_i
///   l_{t+1} = l_t + (sum of orders) / ((n_fundamentalists + n_chartists) * liquidity)
/// theta_i = chartist_threshold * (1 + Exp(1)) is drawn once per chartist.
struct MarketConfig {
  std::size_t n_fundamentalists = 20;
  std::size_t n_chartists = 80;
  double fundamental_value = 100.0;
  std::size_t chartist_memory = 5;
  double noise_scale = 1.0;
  double liquidity = 10.0;
  double max_leverage = 0.9;
  std::size_t steps = 10000;
  std::uint64_t seed = 1;

  double fundamentalist_gain = 0.2;
  double chartist_gain = 200.0;
  double chartist_threshold = 0.005;
  /// Starting price; <= 0 means "start at fundamental_value".
  double initial_price = 0.0;
  /// One-step log return below this marks a meltdown.
  double meltdown_threshold = -0.1;

  bool operator==(const MarketConfig&) const = default;
};

void validate(const MarketConfig& config);

/// Chartist-dominated configuration with fat-tailed returns.
MarketConfig stress_market_config();

struct MarketSimResult {
  std::vector<double> prices;       // steps + 1 entries
  std::vector<double> log_returns;  // steps entries
  /// Aggregate mark-to-market wealth (cash + position * price), one per price.
  std::vector<double> agent_wealth;
  std::vector<std::size_t> meltdown_events;  // indices into log_returns
};

/// Deterministic for a given config (including seed). Throws
/// Error(SimDiverged) naming the step if the price stops being finite.
MarketSimResult run_market_sim(const MarketConfig& config);

/// Largest one-step drop, max(0, -min log return).
double max_drawdown(const MarketSimResult& result);

}  // namespace sysrisk::agents
