#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "sysrisk/dynamics/export.hpp"
#include "sysrisk/dynamics/logistic.hpp"
#include "sysrisk/dynamics/lotka_volterra.hpp"
#include "sysrisk/dynamics/occupancy.hpp"
#include "sysrisk/dynamics/superposition.hpp"
#include "sysrisk/error.hpp"
#include "oracles.hpp"

using namespace sysrisk;
using namespace sysrisk::dynamics;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("iterate_logistic examples") {
  SUBCASE("zero is a fixed point for any r") {
    for (double r : {0.0, 1.5, 3.3, 4.0}) {
      auto orbit = iterate_logistic({r, 0.0, 10, 50});
      for (double v : orbit.raw()) CHECK(v == 0.0);
    }
  }
  SUBCASE("r=4 from 0.5 hits 1 then 0") {
    auto orbit = iterate_logistic({4.0, 0.5, 0, 5});
    CHECK(orbit.raw()[0] == 1.0);
    for (std::size_t i = 1; i < 5; ++i) CHECK(orbit.raw()[i] == 0.0);
  }
  SUBCASE("r=2.5 converges to 1 - 1/r") {
    auto orbit = iterate_logistic({2.5, 0.2, 1000, 100});
    for (double v : orbit.raw()) CHECK(v == doctest::Approx(0.6).epsilon(1e-9));
  }
  SUBCASE("retains exactly n_keep values") {
    CHECK(iterate_logistic({3.7, 0.1, 7, 33}).size() == 33);
  }
}

TEST_CASE("iterate_logistic rejects out-of-domain parameters") {
  CHECK(code_of([] { iterate_logistic({4.01, 0.5, 0, 1}); }) == ErrorCode::Validation);
  CHECK(code_of([] { iterate_logistic({-0.1, 0.5, 0, 1}); }) == ErrorCode::Validation);
  CHECK(code_of([] { iterate_logistic({3.0, 1.2, 0, 1}); }) == ErrorCode::Validation);
  CHECK(code_of([] { iterate_logistic({3.0, 0.5, 0, 0}); }) == ErrorCode::Validation);
  CHECK(code_of([] { iterate_logistic({std::nan(""), 0.5, 0, 1}); }) == ErrorCode::Validation);
}

TEST_CASE("property: logistic orbits stay in [0, 1]") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> r_dist(0.0, 4.0), x_dist(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double r = trial < 20 ? 4.0 : r_dist(gen);
    auto orbit = iterate_logistic({r, x_dist(gen), 0, 2000});
    for (double v : orbit.raw()) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
  }
}

TEST_CASE("property: fixed-point convergence for 1 < r < 3") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> r_dist(1.05, 2.95), x_dist(0.01, 0.99);
  for (int trial = 0; trial < 100; ++trial) {
    const double r = r_dist(gen);
    auto orbit = iterate_logistic({r, x_dist(gen), 5000, 32});
    for (double v : orbit.raw()) REQUIRE(std::fabs(v - (1.0 - 1.0 / r)) < 1e-6);
  }
}

TEST_CASE("property: identical inputs give bit-identical orbits") {
  const LogisticParams p{3.91, 0.123, 17, 4096};
  CHECK(iterate_logistic(p) == iterate_logistic(p));
  CHECK(sensitivity_divergence(p, 1e-9) == sensitivity_divergence(p, 1e-9));
}

TEST_CASE("deduplicate merges values within tolerance") {
  auto d = deduplicate({0.3, 0.1, 0.1 + 1e-8, 0.3 - 1e-9, 0.2}, 1e-6);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == doctest::Approx(0.1));
  CHECK(d[2] == doctest::Approx(0.3));
}

TEST_CASE("bifurcation_scan detects periods") {
  BifurcationScan scan;
  scan.r_min = 2.0;
  scan.r_max = 3.8;
  scan.r_count = 4;  // 2.0, 2.6, 3.2, 3.8
  auto d = bifurcation_scan(scan);
  REQUIRE(d.r_values.size() == 4);
  CHECK(d.r_values.front() == 2.0);
  CHECK(d.r_values.back() == 3.8);

  CHECK(d.detected_period[0] == std::optional<std::size_t>{1});
  CHECK(d.asymptotic_sets[0][0] == doctest::Approx(0.5).epsilon(1e-9));

  REQUIRE(d.detected_period[2] == std::optional<std::size_t>{2});
  const auto [lo, hi] = oracle::logistic_period_two(d.r_values[2]);
  CHECK(d.asymptotic_sets[2][0] == doctest::Approx(lo).epsilon(1e-9));
  CHECK(d.asymptotic_sets[2][1] == doctest::Approx(hi).epsilon(1e-9));
  CHECK(lo == doctest::Approx(0.5130).epsilon(1e-4));
  CHECK(hi == doctest::Approx(0.7995).epsilon(1e-4));

  CHECK_FALSE(d.detected_period[3].has_value());  // r = 3.8 is chaotic
}

TEST_CASE("property: detected period equals asymptotic set size") {
  BifurcationScan scan;
  scan.r_min = 2.8;
  scan.r_max = 4.0;
  scan.r_count = 97;
  auto d = bifurcation_scan(scan);
  for (std::size_t i = 0; i < d.r_values.size(); ++i) {
    REQUIRE_FALSE(d.asymptotic_sets[i].empty());
    if (d.detected_period[i]) {
      CHECK(*d.detected_period[i] == d.asymptotic_sets[i].size());
    } else {
      CHECK(d.asymptotic_sets[i].size() > kPeriodCap);
    }
  }
}

TEST_CASE("period doubling at r=3.2 and r=3.5") {
  for (auto [r, period] : {std::pair{3.2, 2}, std::pair{3.5, 4}}) {
    auto orbit = iterate_logistic({r, 0.5, 10000, 256});
    CHECK(deduplicate(orbit.raw(), 1e-6).size() == static_cast<std::size_t>(period));
  }
}

TEST_CASE("bifurcation_scan validates its grid") {
  BifurcationScan bad;
  bad.r_min = 3.0;
  bad.r_max = 2.0;
  CHECK(code_of([&] { bifurcation_scan(bad); }) == ErrorCode::Validation);
  bad = {};
  bad.r_count = 1;
  CHECK(code_of([&] { bifurcation_scan(bad); }) == ErrorCode::Validation);
}

TEST_CASE("lyapunov_logistic matches closed forms") {
  const auto a = lyapunov_logistic(2.5, 0.3, 100000);
  CHECK(std::fabs(a.exponent - std::log(0.5)) < 0.01);
  CHECK(a.converged);

  // Period-2 multiplier f'(x1) f'(x2) = -r^2 + 2r + 4.
  const double r = 3.2;
  const double multiplier = -r * r + 2 * r + 4;
  CHECK(multiplier == doctest::Approx(0.16));
  const auto b = lyapunov_logistic(r, 0.3, 100000);
  CHECK(std::fabs(b.exponent - 0.5 * std::log(multiplier)) < 0.01);

  const auto c = lyapunov_logistic(4.0, 0.3, 1000000);
  CHECK(std::fabs(c.exponent - std::log(2.0)) < 0.01);
  CHECK(c.n_samples == 1000000);
}

TEST_CASE("twin-orbit estimator cross-checks the derivative average") {
  for (double r : {2.5, 3.2, 3.7, 3.9, 4.0}) {
    const auto deriv = lyapunov_logistic(r, 0.3, 200000);
    const auto twin = lyapunov_twin_orbit(r, 0.3, 200000);
    CAPTURE(r);
    CHECK(std::fabs(deriv.exponent - twin.exponent) < 0.02);
  }
}

TEST_CASE("property: Lyapunov sign separates order from chaos") {
  for (double r : {2.0, 2.5, 3.2}) CHECK(lyapunov_logistic(r, 0.3, 100000).exponent < 0.0);
  for (double r : {3.7, 3.9, 4.0}) CHECK(lyapunov_logistic(r, 0.3, 100000).exponent > 0.0);
}

TEST_CASE("superstable orbit keeps a finite exponent") {
  const auto e = lyapunov_logistic(2.0, 0.3, 10000);
  CHECK(std::isfinite(e.exponent));
  CHECK(e.exponent < -10.0);
  CHECK(e.converged);
}

TEST_CASE("lyapunov_logistic preconditions") {
  CHECK(code_of([] { lyapunov_logistic(3.0, 0.5, 999); }) == ErrorCode::Validation);
  CHECK(code_of([] { lyapunov_logistic(5.0, 0.5, 1000); }) == ErrorCode::Validation);
}

TEST_CASE("chaotic estimate with a short orbit reports non-convergence") {
  // Short chaotic orbits have noisy running means; small n should at least
  // sometimes fail the 1e-3 tail check.
  int unconverged = 0;
  for (int i = 0; i < 20; ++i)
    unconverged += !lyapunov_logistic(3.9, 0.1 + 0.04 * i, 1000, 100).converged;
  CHECK(unconverged > 0);
}

TEST_CASE("sensitivity_divergence") {
  SUBCASE("stable regime contracts the perturbation") {
    auto sep = sensitivity_divergence({2.5, 0.3, 0, 100}, 1e-10);
    CHECK(sep.back() < 1e-12);
  }
  SUBCASE("chaotic regime amplifies 1e-10 past 0.1 within 45 steps") {
    // Independent twin run in extended precision.
    long double a = 0.3L, b = 0.3L + 1e-10L;
    int oracle_step = -1;
    for (int k = 1; k <= 200 && oracle_step < 0; ++k) {
      a = 4.0L * a * (1.0L - a);
      b = 4.0L * b * (1.0L - b);
      if (std::fabs(static_cast<double>(a - b)) > 0.1) oracle_step = k;
    }
    REQUIRE(oracle_step > 0);
    CHECK(oracle_step <= 45);

    auto sep = sensitivity_divergence({4.0, 0.3, 0, 45}, 1e-10);
    auto it = std::find_if(sep.begin(), sep.end(), [](double d) { return d > 0.1; });
    REQUIRE(it != sep.end());
    CHECK(std::abs(static_cast<int>(it - sep.begin()) + 1 - oracle_step) <= 2);
  }
  SUBCASE("zero perturbation stays zero") {
    for (double d : sensitivity_divergence({4.0, 0.3, 0, 100}, 0.0)) CHECK(d == 0.0);
  }
  SUBCASE("rejects large or out-of-range perturbations") {
    CHECK(code_of([] { sensitivity_divergence({4.0, 0.3, 0, 10}, 1e-3); }) == ErrorCode::Validation);
    CHECK(code_of([] { sensitivity_divergence({4.0, 1.0, 0, 10}, 1e-7); }) == ErrorCode::Validation);
  }
}

TEST_CASE("Lotka-Volterra RK4") {
  SUBCASE("interior equilibrium is constant") {
    LotkaVolterraParams p;
    p.x0 = p.gamma / p.delta;
    p.y0 = p.alpha / p.beta;
    p.steps = 1000;
    auto orbit = integrate_lotka_volterra(p);
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      CHECK(orbit.state(i)[0] == doctest::Approx(p.x0).epsilon(1e-14));
      CHECK(orbit.state(i)[1] == doctest::Approx(p.y0).epsilon(1e-14));
    }
  }
  SUBCASE("first integral drifts < 1e-6 over 1e4 steps") {
    LotkaVolterraParams p;  // alpha=2/3, beta=4/3, gamma=delta=1, (1.5, 0.5), dt=1e-3
    auto orbit = integrate_lotka_volterra(p);
    REQUIRE(orbit.size() == 10001);
    auto invariant = [&](double x, double y) {
      return p.delta * x - p.gamma * std::log(x) + p.beta * y - p.alpha * std::log(y);
    };
    const double v0 = invariant(1.5, 0.5);
    double worst = 0.0;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      auto s = orbit.state(i);
      REQUIRE(s[0] > 0.0);
      REQUIRE(s[1] > 0.0);
      worst = std::max(worst, std::fabs(invariant(s[0], s[1]) - v0) / std::fabs(v0));
    }
    CHECK(worst < 1e-6);
  }
  SUBCASE("orbit closes on itself") {
    LotkaVolterraParams p;
    auto orbit = integrate_lotka_volterra(p);
    auto dist = [&](std::size_t i) {
      auto s = orbit.state(i);
      return std::hypot(s[0] - p.x0, s[1] - p.y0);
    };
    // Leave the start, then take the first local minimum of the distance.
    std::size_t i = 1;
    while (i < orbit.size() && dist(i) < 0.1) ++i;
    REQUIRE(i < orbit.size());
    double best = 1e9;
    for (; i < orbit.size(); ++i) best = std::min(best, dist(i));
    CHECK(best < 1e-3);
  }
  SUBCASE("invalid parameters") {
    LotkaVolterraParams p;
    p.beta = 0.0;
    CHECK(code_of([&] { integrate_lotka_volterra(p); }) == ErrorCode::Validation);
    p = {};
    p.dt = -1.0;
    CHECK(code_of([&] { integrate_lotka_volterra(p); }) == ErrorCode::Validation);
  }
  SUBCASE("oversized step reports divergence") {
    LotkaVolterraParams p;
    p.dt = 5.0;
    p.steps = 100;
    CHECK(code_of([&] { integrate_lotka_volterra(p); }) == ErrorCode::SimDiverged);
  }
}

TEST_CASE("occupancy_histogram") {
  SUBCASE("constant orbit puts all mass in one bin") {
    Orbit o(1, TimeBase::Discrete);
    for (int i = 0; i < 10; ++i) o.push_back(0.25);
    auto h = occupancy_histogram(o, 8);
    CHECK(h.probabilities[0] == 1.0);
    for (std::size_t b = 1; b < 8; ++b) CHECK(h.probabilities[b] == 0.0);
  }
  SUBCASE("period-2 logistic orbit splits mass between two bins") {
    auto orbit = iterate_logistic({3.2, 0.5, 10000, 1000});
    auto h = occupancy_histogram(orbit, 10);
    int occupied = 0;
    for (double p : h.probabilities) {
      if (p > 0.0) {
        ++occupied;
        CHECK(p == doctest::Approx(0.5).epsilon(1e-3));
      }
    }
    CHECK(occupied == 2);
  }
  SUBCASE("property: probabilities are non-negative and sum to 1") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 50; ++trial) {
      std::uniform_real_distribution<double> r_dist(2.5, 4.0);
      auto orbit = iterate_logistic({r_dist(gen), 0.3, 100, static_cast<std::size_t>(1 + trial * 37)});
      auto h = occupancy_histogram(orbit, 2 + trial % 17);
      double sum = 0.0;
      for (double p : h.probabilities) {
        REQUIRE(p >= 0.0);
        sum += p;
      }
      CHECK(std::fabs(sum - 1.0) <= 1e-9);
    }
    LotkaVolterraParams lv;
    auto h = occupancy_histogram(integrate_lotka_volterra(lv), 12);
    CHECK(h.dimension() == 2);
    CHECK(h.probabilities.size() == 144);
    double sum = 0.0;
    for (double p : h.probabilities) sum += p;
    CHECK(std::fabs(sum - 1.0) <= 1e-9);
  }
  SUBCASE("rejects single-bin partitions") {
    Orbit o(1, TimeBase::Discrete);
    o.push_back(0.5);
    CHECK(code_of([&] { occupancy_histogram(o, 1); }) == ErrorCode::Validation);
  }
}

TEST_CASE("test_superposition") {
  const std::vector<double> u{0.2}, v{0.3};
  auto triple = [](std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    for (auto& e : y) e *= 3.0;
    return y;
  };
  auto r = test_superposition(triple, u, v, 1.7, -0.4, 1e-12);
  CHECK(r.verdict == Linearity::Linear);
  CHECK(r.residual < 1e-15);

  auto step = [](std::span<const double> x) { return std::vector<double>{logistic_step(4.0, x[0])}; };
  auto n = test_superposition(step, u, v, 1.0, 1.0, 1e-12);
  CHECK(n.verdict == Linearity::Nonlinear);
  CHECK(n.residual == doctest::Approx(0.48).epsilon(1e-12));

  auto id = test_superposition(step, u, v, 1.0, 0.0, 1e-12);
  CHECK(id.residual == 0.0);
  CHECK(id.verdict == Linearity::Linear);
}

TEST_CASE("property: zero-intercept linear maps are LINEAR, logistic step is not") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t dim = 1 + trial % 4;
    std::vector<double> m(dim * dim);
    for (auto& e : m) e = coef(gen);
    auto linear = [&](std::span<const double> x) {
      std::vector<double> y(dim, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) y[i] += m[i * dim + j] * x[j];
      return y;
    };
    std::vector<double> u(dim), v(dim);
    for (auto& e : u) e = coef(gen);
    for (auto& e : v) e = coef(gen);
    CHECK(test_superposition(linear, u, v, coef(gen), coef(gen), 1e-12).verdict == Linearity::Linear);
  }
  auto step = [](std::span<const double> x) { return std::vector<double>{logistic_step(3.7, x[0])}; };
  std::uniform_real_distribution<double> unit(0.05, 0.45);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> u{unit(gen)}, v{unit(gen)};
    CHECK(test_superposition(step, u, v, 1.0, 1.0, 1e-12).verdict == Linearity::Nonlinear);
  }
}

TEST_CASE("orbit and diagram export") {
  auto orbit = iterate_logistic({3.2, 0.5, 100, 3});
  std::ostringstream csv;
  write_csv(csv, orbit);
  CHECK(csv.str().rfind("step,x0\n0,", 0) == 0);

  LotkaVolterraParams p;
  p.steps = 2;
  std::ostringstream lv;
  write_csv(lv, integrate_lotka_volterra(p));
  CHECK(lv.str().rfind("t,x0,x1\n0,1.5,0.5\n", 0) == 0);

  BifurcationScan scan;
  scan.r_min = 2.0;
  scan.r_max = 3.2;
  scan.r_count = 2;
  auto d = bifurcation_scan(scan);
  std::ostringstream dcsv;
  write_csv(dcsv, d);
  std::string line;
  std::istringstream lines(dcsv.str());
  int rows = 0;
  std::getline(lines, line);
  CHECK(line == "r,state,period");
  while (std::getline(lines, line)) ++rows;
  CHECK(rows == 3);  // {0.5} + two period-2 points

  const auto j = to_json(d);
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][1]["period"] == 2);
}
