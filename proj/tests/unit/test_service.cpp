#include <doctest.h>
#include <httplib.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "sysrisk/error.hpp"
#include "sysrisk/service/api.hpp"
#include "sysrisk/service/cli.hpp"
#include "sysrisk/service/http.hpp"
#include "temp_dir.hpp"

using namespace sysrisk;
using namespace sysrisk::service;
using nlohmann::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

struct Served {
  explicit Served(const std::filesystem::path& store) : api(store), server(api) {
    port = server.bind("127.0.0.1", 0);
    server.start();
  }
  ~Served() { server.stop(); }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(60, 0);
    return c;
  }
  Api api;
  HttpServer server;
  int port = 0;
};

}  // namespace

TEST_CASE("error mapping") {
  CHECK(http_status(ErrorCode::Validation) == 400);
  CHECK(http_status(ErrorCode::NotFound) == 404);
  CHECK(http_status(ErrorCode::DegenerateInput) == 422);
  CHECK(http_status(ErrorCode::SimDiverged) == 422);
  CHECK(http_status(ErrorCode::Internal) == 500);
  auto j = error_json(ErrorCode::Validation, "bad", "r");
  CHECK(j == json{{"code", "VALIDATION"}, {"message", "bad"}, {"detail", "r"}});
  CHECK_FALSE(error_json(ErrorCode::Internal, "x").contains("detail"));
}

TEST_CASE("life patterns") {
  CHECK(life_pattern("blinker", 5, 5).population() == 3);
  CHECK(life_pattern("glider", 8, 8).population() == 5);
  CHECK(life_pattern("block", 5, 5).population() == 4);
  CHECK_THROWS_AS(life_pattern("spaceship", 8, 8), Error);
  CHECK_THROWS_AS(life_pattern("glider", 3, 3), Error);
}

TEST_CASE("step cap rejects oversized runs") {
  TempDir tmp;
  Api api(tmp.path(), 1000);
  LyapunovRequest req;
  req.n = 1000000;
  CHECK_THROWS_AS(api.lyapunov(req), Error);
  req.n = 1000;
  req.n_transient = 0;
  CHECK(api.lyapunov(req).contains("exponent"));
}

TEST_CASE("HTTP endpoints") {
  TempDir tmp;
  Served s(tmp.path());
  auto c = s.client();

  SUBCASE("health") {
    auto r = c.Get("/health");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(json::parse(r->body) == json{{"status", "ok"}});
  }
  SUBCASE("lyapunov and bifurcation") {
    auto r = c.Get("/dynamics/lyapunov?r=4.0&n=200000");
    REQUIRE(r);
    CHECK(r->status == 200);
    CHECK(std::fabs(json::parse(r->body)["exponent"].get<double>() - std::log(2.0)) < 0.01);

    auto b = c.Get("/dynamics/bifurcation?r_min=3.1&r_max=3.3&r_count=3");
    REQUIRE(b);
    CHECK(b->status == 200);
    CHECK(json::parse(b->body)["rows"].size() == 3);

    auto bad = c.Get("/dynamics/lyapunov?r=9");
    REQUIRE(bad);
    CHECK(bad->status == 400);
    CHECK(json::parse(bad->body)["code"] == "VALIDATION");
    auto junk = c.Get("/dynamics/lyapunov?r=abc");
    REQUIRE(junk);
    CHECK(junk->status == 400);
  }
  SUBCASE("invalid scenario kind is a validation error") {
    auto r = c.Post("/scenarios", R"({"name":"x","kind":"WEATHER","config":{}})", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
    CHECK(json::parse(r->body)["code"] == "VALIDATION");
  }
  SUBCASE("malformed JSON body") {
    auto r = c.Post("/scenarios", "{nope", "application/json");
    REQUIRE(r);
    CHECK(r->status == 400);
  }
  SUBCASE("scenario lifecycle") {
    auto saved = c.Post("/scenarios", R"({"name":"chaos","kind":"LOGISTIC","config":{"r":3.9,"n":20000}})",
                        "application/json");
    REQUIRE(saved);
    CHECK(saved->status == 201);
    const auto id = json::parse(saved->body)["id"].get<std::string>();

    auto list = c.Get("/scenarios");
    REQUIRE(list);
    CHECK(json::parse(list->body)["scenarios"].size() == 1);

    auto got = c.Get(("/scenarios/" + id).c_str());
    REQUIRE(got);
    CHECK(json::parse(got->body)["config"]["r"] == 3.9);

    auto run = c.Post(("/scenarios/" + id + "/run").c_str(), "{}", "application/json");
    REQUIRE(run);
    CHECK(run->status == 200);
    CHECK(json::parse(run->body)["summary"]["lyapunov_exponent"].get<double>() > 0.0);

    auto wi = c.Post(("/scenarios/" + id + "/whatif").c_str(), R"({"overrides":{}})", "application/json");
    REQUIRE(wi);
    CHECK(wi->status == 200);
    CHECK(json::parse(wi->body)["verdict"] == "NEUTRAL");

    auto wi_bad = c.Post(("/scenarios/" + id + "/whatif").c_str(), R"({"overrides":{"zeta":1}})",
                         "application/json");
    REQUIRE(wi_bad);
    CHECK(wi_bad->status == 400);
    CHECK(json::parse(wi_bad->body)["detail"] == "zeta");

    auto cm = c.Post(("/scenarios/" + id + "/countermeasures").c_str(),
                     R"({"tunable":["r"],"step_fractions":[0.1,-0.1]})", "application/json");
    REQUIRE(cm);
    CHECK(cm->status == 200);
    auto cj = json::parse(cm->body);
    CHECK(cj["ranked"][0]["step_fraction"] == -0.1);
  }
  SUBCASE("unknown scenario and route") {
    auto r = c.Get("/scenarios/0123456789abcdef0123456789abcdef");
    REQUIRE(r);
    CHECK(r->status == 404);
    CHECK(json::parse(r->body)["code"] == "NOT_FOUND");
    auto u = c.Get("/nowhere");
    REQUIRE(u);
    CHECK(u->status == 404);
    CHECK(json::parse(u->body)["code"] == "NOT_FOUND");
  }
  SUBCASE("complexity CSV body") {
    auto r = c.Post("/complexity", "a,b,c\n1,2,0\n2,4,1\n3,6,0\n4,8.5,1\n", "text/csv");
    REQUIRE(r);
    CHECK(r->status == 200);
    auto j = json::parse(r->body);
    CHECK(j["report"]["channels"].size() == 3);
    auto d = c.Post("/complexity", "a,b\n1,5\n2,5\n3,5\n", "text/csv");
    REQUIRE(d);
    CHECK(d->status == 422);
    CHECK(json::parse(d->body)["code"] == "DEGENERATE_INPUT");
  }
  SUBCASE("life and market") {
    auto l = c.Post("/agents/life", R"({"pattern":"blinker","width":5,"height":5,"steps":2})",
                    "application/json");
    REQUIRE(l);
    CHECK(l->status == 200);
    auto lj = json::parse(l->body);
    CHECK(lj["frames"][0] == lj["frames"][2]);
    CHECK(lj["frames"][0] != lj["frames"][1]);

    auto m = c.Post("/agents/market", R"({"steps":500,"seed":3})", "application/json");
    REQUIRE(m);
    CHECK(m->status == 200);
    CHECK(json::parse(m->body)["prices"].size() == 501);

    auto boom = c.Post("/agents/market", R"({"liquidity":1e-6})", "application/json");
    REQUIRE(boom);
    CHECK(boom->status == 422);
    CHECK(json::parse(boom->body)["code"] == "SIM_DIVERGED");
  }
}

TEST_CASE("store survives a server restart") {
  TempDir tmp;
  std::string id;
  {
    Served s(tmp.path());
    auto c = s.client();
    auto r = c.Post("/scenarios", R"({"name":"keep","kind":"MARKET","config":{"steps":100}})",
                    "application/json");
    REQUIRE(r);
    id = json::parse(r->body)["id"];
  }
  Served s(tmp.path());
  auto c = s.client();
  auto r = c.Get(("/scenarios/" + id).c_str());
  REQUIRE(r);
  CHECK(r->status == 200);
  CHECK(json::parse(r->body)["name"] == "keep");
}

TEST_CASE("bind failure is reported") {
  TempDir tmp;
  Served first(tmp.path());
  Api api(tmp.path());
  HttpServer second(api);
  CHECK_THROWS_AS(second.bind("127.0.0.1", first.port), Error);
}

TEST_CASE("CLI exit codes and formats") {
  TempDir tmp;
  const std::string store = tmp.path().string();

  auto none = cli({});
  CHECK(none.code == kExitUsage);
  CHECK_FALSE(none.err.empty());
  CHECK(none.out.empty());

  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"lyapunov", "--r", "abc"}).code == kExitUsage);

  auto bad = cli({"lyapunov", "--r", "4.5"});
  CHECK(bad.code == kExitRuntime);
  CHECK(json::parse(bad.err)["code"] == "VALIDATION");

  auto ly = cli({"lyapunov", "--r", "4.0"});
  REQUIRE(ly.code == kExitOk);
  CHECK(std::fabs(json::parse(ly.out)["exponent"].get<double>() - 0.6931) < 0.01);

  auto ly_csv = cli({"lyapunov", "--r", "2.5", "--n", "20000", "--format", "csv"});
  REQUIRE(ly_csv.code == kExitOk);
  CHECK(ly_csv.out.rfind("r,exponent,n_samples,converged,twin_orbit_exponent\n", 0) == 0);

  auto bif = cli({"bifurcate", "--r-min", "2.5", "--r-max", "4", "--r-count", "600", "--format", "csv"});
  REQUIRE(bif.code == kExitOk);
  CHECK(bif.out.rfind("r,state,period\n2.5,", 0) == 0);

  auto life = cli({"life", "--pattern", "glider", "--width", "8", "--height", "8", "--steps", "4",
                   "--format", "text"});
  CHECK(life.code == kExitOk);

  auto mk = cli({"market", "--steps", "300", "--format", "csv"});
  REQUIRE(mk.code == kExitOk);
  CHECK(mk.out.rfind("step,price,log_return,agent_wealth\n", 0) == 0);

  const auto csv_path = tmp.path() / "in.csv";
  std::ofstream(csv_path) << "x,y\n1,2\n2,3\n3,5\n";
  auto cx = cli({"complexity", csv_path.string()});
  REQUIRE(cx.code == kExitOk);
  CHECK(json::parse(cx.out)["report"]["score"].get<double>() > 0.9);
  CHECK(cli({"complexity", (tmp.path() / "missing.csv").string()}).code == kExitRuntime);

  const auto sc = tmp.path() / "sc.json";
  std::ofstream(sc) << R"({"name":"cli","kind":"LOGISTIC","config":{"r":2.5,"n":20000}})";
  auto saved = cli({"--store", store, "scenario", "save", sc.string()});
  REQUIRE(saved.code == kExitOk);
  const auto id = json::parse(saved.out)["id"].get<std::string>();

  CHECK(json::parse(cli({"--store", store, "scenario", "list"}).out)["scenarios"].size() == 1);
  auto run = cli({"--store", store, "scenario", "run", id});
  REQUIRE(run.code == kExitOk);
  CHECK(std::fabs(json::parse(run.out)["summary"]["lyapunov_exponent"].get<double>() + 0.6931) < 0.01);

  auto wi = cli({"--store", store, "scenario", "whatif", id, "--set", "r=3.9"});
  REQUIRE(wi.code == kExitOk);
  CHECK(json::parse(wi.out)["verdict"] == "RISK_UP");
  auto wi_bad = cli({"--store", store, "scenario", "whatif", id, "--set", "q=1"});
  CHECK(wi_bad.code == kExitRuntime);
  CHECK(json::parse(wi_bad.err)["detail"] == "q");

  auto counter = cli({"--store", store, "scenario", "counter", id, "--param", "r", "--fraction", "0.1",
                      "--fraction", "-0.1"});
  CHECK(counter.code == kExitOk);

  auto missing = cli({"--store", store, "scenario", "run", "0123456789abcdef0123456789abcdef"});
  CHECK(missing.code == kExitRuntime);
  CHECK(json::parse(missing.err)["code"] == "NOT_FOUND");
}
