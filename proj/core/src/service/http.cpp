#include "sysrisk/service/http.hpp"

#include <charconv>
#include <chrono>
#include <thread>

#include <httplib.h>

#include "sysrisk/complexity/series.hpp"

namespace sysrisk::service {
namespace {

using nlohmann::json;

void send_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, error_json(e), http_status(e.code()));
}

json body_json(const httplib::Request& req) {
  if (req.body.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Validation, std::string("request body is not valid JSON: ") + e.what(), "body");
  }
}

template <class T>
void query(const httplib::Request& req, const char* key, T& out) {
  if (!req.has_param(key)) return;
  const std::string v = req.get_param_value(key);
  if constexpr (std::is_same_v<T, bool>) {
    if (v == "true" || v == "1")
      out = true;
    else if (v == "false" || v == "0")
      out = false;
    else
      fail(ErrorCode::Validation, std::string("query parameter ") + key + " must be a boolean", key);
  } else {
    T parsed{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), parsed);
    if (ec != std::errc{} || ptr != v.data() + v.size())
      fail(ErrorCode::Validation, std::string("query parameter ") + key + " must be numeric", key);
    out = parsed;
  }
}

std::optional<std::uint64_t> optional_seed(const json& body) {
  auto it = body.find("seed");
  if (it == body.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_unsigned()) fail(ErrorCode::Validation, "seed must be a non-negative integer", "seed");
  return it->get<std::uint64_t>();
}

template <class T>
std::vector<T> list_field(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end()) return {};
  try {
    return it->get<std::vector<T>>();
  } catch (const json::exception&) {
    fail(ErrorCode::Validation, std::string(key) + " has the wrong element type", key);
  }
}

}  // namespace

struct HttpServer::Impl {
  explicit Impl(Api& a) : api(a) {}

  template <class F>
  httplib::Server::Handler guarded(F handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      try {
        handler(req, res);
      } catch (const Error& e) {
        send_error(res, e);
      } catch (const std::exception& e) {
        send_json(res, error_json(ErrorCode::Internal, e.what()), 500);
      }
    };
  }

  void install_routes() {
    server.Get("/health", guarded([](const auto&, auto& res) { send_json(res, {{"status", "ok"}}); }));

    server.Get("/dynamics/bifurcation", guarded([this](const auto& req, auto& res) {
      dynamics::BifurcationScan scan;
      query(req, "r_min", scan.r_min);
      query(req, "r_max", scan.r_max);
      query(req, "r_count", scan.r_count);
      query(req, "x0", scan.x0);
      query(req, "n_transient", scan.n_transient);
      query(req, "n_keep", scan.n_keep);
      query(req, "dedup_tol", scan.dedup_tol);
      send_json(res, api.bifurcation(scan));
    }));

    server.Get("/dynamics/lyapunov", guarded([this](const auto& req, auto& res) {
      LyapunovRequest r;
      query(req, "r", r.r);
      query(req, "x0", r.x0);
      query(req, "n", r.n);
      query(req, "n_transient", r.n_transient);
      send_json(res, api.lyapunov(r));
    }));

    server.Post("/dynamics/lotka", guarded([this](const auto& req, auto& res) {
      send_json(res, api.lotka(lotka_from_json(body_json(req))));
    }));

    server.Post("/agents/life", guarded([this](const auto& req, auto& res) {
      const json body = body_json(req);
      LifeRequest r;
      if (auto it = body.find("grid"); it != body.end() && it->is_string()) {
        r.grid = agents::parse_life_text(it->template get<std::string>());
      } else {
        r.grid = life_pattern(body.value("pattern", std::string("glider")),
                              body.value("width", std::size_t{16}),
                              body.value("height", std::size_t{16}));
      }
      r.steps = body.value("steps", std::size_t{4});
      send_json(res, api.life(r));
    }));

    server.Post("/agents/market", guarded([this](const auto& req, auto& res) {
      send_json(res, api.market(market_from_json(body_json(req))));
    }));

    server.Post("/complexity", guarded([this](const auto& req, auto& res) {
      ComplexityRequest r;
      query(req, "edge_threshold", r.options.edge_threshold);
      query(req, "returns_mode", r.options.returns_mode);
      query(req, "sigma_limit", r.sigma_limit);
      send_json(res, api.complexity(complexity::parse_series_csv(req.body), r));
    }));

    server.Post("/scenarios", guarded([this](const auto& req, auto& res) {
      send_json(res, api.save_scenario(body_json(req)), 201);
    }));

    server.Get("/scenarios", guarded([this](const auto&, auto& res) {
      send_json(res, api.list_scenarios());
    }));

    server.Get(R"(/scenarios/([A-Za-z0-9_-]+))", guarded([this](const auto& req, auto& res) {
      send_json(res, api.get_scenario(req.matches[1]));
    }));

    server.Post(R"(/scenarios/([A-Za-z0-9_-]+)/run)", guarded([this](const auto& req, auto& res) {
      send_json(res, api.run_scenario(req.matches[1], optional_seed(body_json(req))));
    }));

    server.Post(R"(/scenarios/([A-Za-z0-9_-]+)/whatif)", guarded([this](const auto& req, auto& res) {
      const json body = body_json(req);
      send_json(res, api.what_if(req.matches[1], body.value("overrides", json::object()),
                                 optional_seed(body)));
    }));

    server.Post(R"(/scenarios/([A-Za-z0-9_-]+)/countermeasures)",
                guarded([this](const auto& req, auto& res) {
                  const json body = body_json(req);
                  send_json(res, api.countermeasures(req.matches[1],
                                                     list_field<std::string>(body, "tunable"),
                                                     list_field<double>(body, "step_fractions"),
                                                     list_field<std::uint64_t>(body, "seeds")));
                }));

    // Plain SO_REUSEADDR: with SO_REUSEPORT a second server could share the port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty())
        send_json(res, error_json(res.status == 404 ? ErrorCode::NotFound : ErrorCode::Internal,
                                  "no such route"),
                  res.status);
    });
  }

  Api& api;
  httplib::Server server;
  std::thread thread;
  int port = -1;
};

HttpServer::HttpServer(Api& api) : impl_(std::make_unique<Impl>(api)) { impl_->install_routes(); }

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0)
    fail(ErrorCode::Internal, "cannot bind " + host + ":" + std::to_string(port));
  impl_->port = bound;
  return bound;
}

void HttpServer::listen() {
  if (impl_->port < 0) fail(ErrorCode::Internal, "HttpServer::listen called before bind");
  impl_->server.listen_after_bind();
}

void HttpServer::start() {
  impl_->thread = std::thread([this] { listen(); });
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(5);
  while (!impl_->server.is_running()) {
    if (std::chrono::steady_clock::now() > deadline) {
      stop();
      fail(ErrorCode::Internal, "HTTP server did not start");
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(1));
  }
}

void HttpServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace sysrisk::service
