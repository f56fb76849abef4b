#include "sysrisk/service/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "sysrisk/complexity/series.hpp"
#include "sysrisk/dynamics/export.hpp"
#include "sysrisk/service/api.hpp"
#include "sysrisk/service/http.hpp"

namespace sysrisk::service {
namespace {

using nlohmann::json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Validation, "cannot open " + path, "file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json parse_json_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Validation, std::string(what) + " is not valid JSON: " + e.what(), what);
  }
}

// "@file" reads the file, anything else is inline JSON.
json json_argument(const std::string& arg, const char* what) {
  if (!arg.empty() && arg.front() == '@') return parse_json_text(read_input(arg.substr(1)), what);
  return parse_json_text(arg, what);
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

void add_format(CLI::App* cmd, std::string& format, std::vector<std::string> allowed) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember(allowed))
      ->capture_default_str();
}

struct Options {
  std::string format = "json";
  std::string store;

  dynamics::BifurcationScan scan;
  LyapunovRequest lyap;

  std::string config_file;
  dynamics::LotkaVolterraParams lotka;
  agents::MarketConfig market;

  std::string life_file;
  std::string life_pattern_name = "glider";
  std::size_t life_width = 16, life_height = 16, life_steps = 4;

  std::string csv_file = "-";
  ComplexityRequest complexity;

  std::string scenario_file = "-";
  std::string id;
  std::optional<std::uint64_t> seed;
  std::string overrides;
  std::vector<std::string> sets;
  std::vector<std::string> params;
  std::vector<double> fractions;
  std::vector<std::uint64_t> seeds;

  std::string host = "127.0.0.1";
  int port = 8080;
  std::size_t step_cap = 50'000'000;
};

void write_market_csv(std::ostream& out, const json& j) {
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "step,price,log_return,agent_wealth\n";
  const auto& prices = j.at("prices");
  const auto& returns = j.at("log_returns");
  const auto& wealth = j.at("agent_wealth");
  for (std::size_t i = 0; i < prices.size(); ++i) {
    out << i << ',' << prices[i].get<double>() << ',';
    if (i > 0) out << returns[i - 1].get<double>();
    out << ',' << wealth[i].get<double>() << '\n';
  }
}

void write_correlation_csv(std::ostream& out, const json& j) {
  out.precision(std::numeric_limits<double>::max_digits10);
  const auto& report = j.at("report");
  const auto& names = report.at("channels");
  out << "channel";
  for (const auto& n : names) out << ',' << n.get<std::string>();
  out << '\n';
  const auto& m = report.at("correlation_matrix");
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << names[i].get<std::string>();
    for (const auto& v : m[i]) out << ',' << v.get<double>();
    out << '\n';
  }
}

// key=value with value parsed as JSON, falling back to a string.
void apply_set(json& overrides, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    fail(ErrorCode::Validation, "--set expects key=value, got '" + assignment + "'", "set");
  const std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  try {
    overrides[key] = json::parse(value);
  } catch (const json::parse_error&) {
    overrides[key] = value;
  }
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Systemic complexity and risk analytics", "sysrisk"};
  app.require_subcommand(1);
  Options o;
  std::function<void(Api&)> action;
  bool needs_api = true;

  auto* bif = app.add_subcommand("bifurcate", "Logistic-map bifurcation diagram");
  bif->add_option("--r-min", o.scan.r_min)->capture_default_str();
  bif->add_option("--r-max", o.scan.r_max)->capture_default_str();
  bif->add_option("--r-count", o.scan.r_count)->capture_default_str();
  bif->add_option("--x0", o.scan.x0)->capture_default_str();
  bif->add_option("--n-transient", o.scan.n_transient)->capture_default_str();
  bif->add_option("--n-keep", o.scan.n_keep)->capture_default_str();
  bif->add_option("--dedup-tol", o.scan.dedup_tol)->capture_default_str();
  add_format(bif, o.format, {"json", "csv"});
  bif->callback([&] {
    action = [&](Api& api) {
      if (o.format == "csv") {
        api.bifurcation(o.scan);  // validation and step cap
        dynamics::write_csv(out, dynamics::bifurcation_scan(o.scan));
      } else {
        emit(out, api.bifurcation(o.scan));
      }
    };
  });

  auto* lyap = app.add_subcommand("lyapunov", "Lyapunov exponent of the logistic map");
  lyap->add_option("--r", o.lyap.r)->capture_default_str();
  lyap->add_option("--x0", o.lyap.x0)->capture_default_str();
  lyap->add_option("--n", o.lyap.n)->capture_default_str();
  lyap->add_option("--n-transient", o.lyap.n_transient)->capture_default_str();
  add_format(lyap, o.format, {"json", "csv"});
  lyap->callback([&] {
    action = [&](Api& api) {
      const json j = api.lyapunov(o.lyap);
      if (o.format == "csv") {
        out.precision(std::numeric_limits<double>::max_digits10);
        out << "r,exponent,n_samples,converged,twin_orbit_exponent\n"
            << j["r"].get<double>() << ',' << j["exponent"].get<double>() << ','
            << j["n_samples"].get<std::size_t>() << ',' << (j["converged"].get<bool>() ? 1 : 0)
            << ',' << j["twin_orbit_exponent"].get<double>() << '\n';
      } else {
        emit(out, j);
      }
    };
  });

  auto* lotka = app.add_subcommand("lotka", "Lotka-Volterra RK4 trajectory");
  lotka->add_option("--config", o.config_file, "JSON parameter file (flags override it)");
  lotka->add_option("--alpha", o.lotka.alpha)->capture_default_str();
  lotka->add_option("--beta", o.lotka.beta)->capture_default_str();
  lotka->add_option("--gamma", o.lotka.gamma)->capture_default_str();
  lotka->add_option("--delta", o.lotka.delta)->capture_default_str();
  lotka->add_option("--x0", o.lotka.x0)->capture_default_str();
  lotka->add_option("--y0", o.lotka.y0)->capture_default_str();
  lotka->add_option("--dt", o.lotka.dt)->capture_default_str();
  lotka->add_option("--steps", o.lotka.steps)->capture_default_str();
  add_format(lotka, o.format, {"json", "csv"});
  lotka->callback([&, lotka] {
    action = [&, lotka](Api& api) {
      if (!o.config_file.empty()) {
        json j = json_argument("@" + o.config_file, "config");
        for (const char* k : {"alpha", "beta", "gamma", "delta", "x0", "y0", "dt", "steps"}) {
          if (lotka->count(std::string("--") + k) == 0) continue;
          j[k] = workbench::config_to_json(o.lotka)[k];
        }
        o.lotka = lotka_from_json(j);
      }
      if (o.format == "csv") {
        api.lotka(o.lotka);
        dynamics::write_csv(out, dynamics::integrate_lotka_volterra(o.lotka));
      } else {
        emit(out, api.lotka(o.lotka));
      }
    };
  });

  auto* life = app.add_subcommand("life", "Conway's Life on a dead-border grid");
  life->add_option("--grid", o.life_file, "Text grid file of 0/1 rows ('-' for stdin)");
  life->add_option("--pattern", o.life_pattern_name, "block | blinker | glider")
      ->capture_default_str();
  life->add_option("--width", o.life_width)->capture_default_str();
  life->add_option("--height", o.life_height)->capture_default_str();
  life->add_option("--steps", o.life_steps)->capture_default_str();
  add_format(life, o.format, {"json", "text"});
  life->callback([&] {
    action = [&](Api& api) {
      LifeRequest r;
      r.grid = o.life_file.empty() ? life_pattern(o.life_pattern_name, o.life_width, o.life_height)
                                   : agents::parse_life_text(read_input(o.life_file));
      r.steps = o.life_steps;
      const json j = api.life(r);
      if (o.format == "text") {
        bool first = true;
        for (const auto& frame : j["frames"]) {
          if (!first) out << '\n';
          first = false;
          out << frame.get<std::string>();
        }
      } else {
        emit(out, j);
      }
    };
  });

  auto* market = app.add_subcommand("market", "Agent-based fundamentalist/chartist market");
  market->add_option("--config", o.config_file, "JSON MarketConfig file (flags override it)");
  market->add_option("--n-fundamentalists", o.market.n_fundamentalists)->capture_default_str();
  market->add_option("--n-chartists", o.market.n_chartists)->capture_default_str();
  market->add_option("--fundamental-value", o.market.fundamental_value)->capture_default_str();
  market->add_option("--chartist-memory", o.market.chartist_memory)->capture_default_str();
  market->add_option("--noise-scale", o.market.noise_scale)->capture_default_str();
  market->add_option("--liquidity", o.market.liquidity)->capture_default_str();
  market->add_option("--max-leverage", o.market.max_leverage)->capture_default_str();
  market->add_option("--steps", o.market.steps)->capture_default_str();
  market->add_option("--seed", o.market.seed)->capture_default_str();
  market->add_option("--meltdown-threshold", o.market.meltdown_threshold)->capture_default_str();
  add_format(market, o.format, {"json", "csv"});
  market->callback([&, market] {
    action = [&, market](Api& api) {
      if (!o.config_file.empty()) {
        json j = json_argument("@" + o.config_file, "config");
        const json flags = workbench::config_to_json(o.market);
        for (const auto& [key, value] : flags.items()) {
          std::string flag = "--" + key;
          std::replace(flag.begin(), flag.end(), '_', '-');
          if (market->count(flag) > 0) j[key] = value;
        }
        o.market = market_from_json(j);
      } else {
        agents::validate(o.market);
      }
      const json j = api.market(o.market);
      if (o.format == "csv")
        write_market_csv(out, j);
      else
        emit(out, j);
    };
  });

  auto* cx = app.add_subcommand("complexity", "Correlation-network complexity score of a CSV");
  cx->add_option("file", o.csv_file, "CSV with header row ('-' for stdin)")->capture_default_str();
  cx->add_option("--edge-threshold", o.complexity.options.edge_threshold)->capture_default_str();
  cx->add_flag("--returns-mode", o.complexity.options.returns_mode,
               "Correlate first differences instead of levels");
  cx->add_option("--sigma-limit", o.complexity.sigma_limit)->capture_default_str();
  add_format(cx, o.format, {"json", "csv"});
  cx->callback([&] {
    action = [&](Api& api) {
      const json j =
          api.complexity(complexity::parse_series_csv(read_input(o.csv_file)), o.complexity);
      if (o.format == "csv")
        write_correlation_csv(out, j);
      else
        emit(out, j);
    };
  });

  auto* sc = app.add_subcommand("scenario", "Scenario store and what-if workbench");
  sc->require_subcommand(1);
  auto* sc_save = sc->add_subcommand("save", "Save a scenario JSON definition");
  sc_save->add_option("file", o.scenario_file, "Scenario JSON ('-' for stdin)")->capture_default_str();
  sc_save->callback([&] {
    action = [&](Api& api) {
      emit(out, api.save_scenario(parse_json_text(read_input(o.scenario_file), "scenario")));
    };
  });
  auto* sc_list = sc->add_subcommand("list", "List saved scenarios in creation order");
  sc_list->callback([&] { action = [&](Api& api) { emit(out, api.list_scenarios()); }; });
  auto* sc_show = sc->add_subcommand("show", "Print a saved scenario");
  sc_show->add_option("id", o.id)->required();
  sc_show->callback([&] { action = [&](Api& api) { emit(out, api.get_scenario(o.id)); }; });
  auto* sc_run = sc->add_subcommand("run", "Run a saved scenario");
  sc_run->add_option("id", o.id)->required();
  sc_run->add_option("--seed", o.seed, "Seed override");
  sc_run->callback([&] { action = [&](Api& api) { emit(out, api.run_scenario(o.id, o.seed)); }; });
  auto* sc_whatif = sc->add_subcommand("whatif", "Compare a scenario against overridden parameters");
  sc_whatif->add_option("id", o.id)->required();
  sc_whatif->add_option("--overrides", o.overrides, "JSON object or @file");
  sc_whatif->add_option("--set", o.sets, "key=value override (repeatable)");
  sc_whatif->add_option("--seed", o.seed, "Seed shared by baseline and variant");
  sc_whatif->callback([&] {
    action = [&](Api& api) {
      json overrides = o.overrides.empty() ? json::object() : json_argument(o.overrides, "overrides");
      if (!overrides.is_object())
        fail(ErrorCode::Validation, "overrides must be a JSON object", "overrides");
      for (const auto& s : o.sets) apply_set(overrides, s);
      emit(out, api.what_if(o.id, overrides, o.seed));
    };
  });
  auto* sc_counter = sc->add_subcommand("counter", "Rank one-at-a-time countermeasures");
  sc_counter->add_option("id", o.id)->required();
  sc_counter->add_option("--param", o.params, "Tunable parameter (repeatable)");
  sc_counter->add_option("--fraction", o.fractions, "Signed step fraction (repeatable)");
  sc_counter->add_option("--seed", o.seeds, "Seed (repeatable; median over seeds)");
  sc_counter->callback([&] {
    action = [&](Api& api) { emit(out, api.countermeasures(o.id, o.params, o.fractions, o.seeds)); };
  });

  auto* serve = app.add_subcommand("serve", "Serve the JSON HTTP API");
  serve->add_option("--host", o.host)->capture_default_str();
  serve->add_option("--port", o.port)->capture_default_str();
  serve->add_option("--step-cap", o.step_cap, "Largest accepted simulation size")
      ->capture_default_str();
  serve->callback([&] {
    needs_api = false;
    action = [&](Api&) {};
  });

  app.add_option("--store", o.store, std::string("Scenario store directory (default $") + kStoreEnv +
                                         " or ./scenarios)");

  if (args.empty()) {
    err << app.help();
    return kExitUsage;
  }
  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    const std::filesystem::path store =
        o.store.empty() ? default_store_path() : std::filesystem::path(o.store);
    Api api(store, o.step_cap);
    if (!needs_api) {
      HttpServer server(api);
      const int port = server.bind(o.host, o.port);
      err << "sysrisk serving on http://" << o.host << ':' << port << " (store "
          << store.string() << ")\n";
      server.listen();
      return kExitOk;
    }
    action(api);
    return kExitOk;
  } catch (const Error& e) {
    err << error_json(e).dump() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << error_json(ErrorCode::Internal, e.what()).dump() << '\n';
    return kExitRuntime;
  }
}

}  // namespace sysrisk::service
