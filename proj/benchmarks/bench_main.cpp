#include <benchmark/benchmark.h>

#include <random>

#include "sysrisk/agents/life.hpp"
#include "sysrisk/agents/market.hpp"
#include "sysrisk/complexity/metrics.hpp"
#include "sysrisk/dynamics/logistic.hpp"
#include "sysrisk/dynamics/lotka_volterra.hpp"

using namespace sysrisk;

static void BM_BifurcationScan(benchmark::State& state) {
  dynamics::BifurcationScan scan;
  scan.r_count = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::bifurcation_scan(scan));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BifurcationScan)->Arg(100)->Arg(600)->Unit(benchmark::kMillisecond);

static void BM_Lyapunov(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::lyapunov_logistic(4.0, 0.3, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Lyapunov)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_LotkaVolterra(benchmark::State& state) {
  dynamics::LotkaVolterraParams p;
  p.steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dynamics::integrate_lotka_volterra(p));
}
BENCHMARK(BM_LotkaVolterra)->Arg(10000)->Unit(benchmark::kMicrosecond);

static void BM_LifeStep(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  agents::LifeGrid g(side, side);
  std::mt19937_64 gen(1);
  std::bernoulli_distribution coin(0.3);
  for (std::size_t y = 0; y < side; ++y)
    for (std::size_t x = 0; x < side; ++x)
      if (coin(gen)) g.set(x, y);
  for (auto _ : state) benchmark::DoNotOptimize(g = agents::life_step(g));
}
BENCHMARK(BM_LifeStep)->Arg(64)->Arg(256);

static void BM_MarketSim(benchmark::State& state) {
  auto c = agents::stress_market_config();
  c.steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(agents::run_market_sim(c));
}
BENCHMARK(BM_MarketSim)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_Complexity(benchmark::State& state) {
  const auto channels = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(1);
  std::normal_distribution<double> n01;
  std::vector<std::string> names;
  std::vector<std::vector<double>> data(channels, std::vector<double>(10000));
  for (std::size_t i = 0; i < channels; ++i) {
    names.push_back("c" + std::to_string(i));
    for (auto& v : data[i]) v = n01(gen);
  }
  const complexity::MultivariateSeries series(names, data);
  for (auto _ : state) benchmark::DoNotOptimize(complexity::compute_complexity(series));
}
BENCHMARK(BM_Complexity)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
