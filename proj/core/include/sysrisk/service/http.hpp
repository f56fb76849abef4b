#pragma once

#include <memory>
#include <string>

#include "sysrisk/service/api.hpp"

namespace sysrisk::service {

/// JSON-over-HTTP front end; see docs/api.md for the frozen routes.
class HttpServer {
 public:
  explicit HttpServer(Api& api);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds host:port (port 0 picks a free port) and returns the bound port.
  /// Throws Error(Internal) when the socket cannot be bound.
  int bind(const std::string& host, int port);

  /// Serves on the bound socket until stop(). Blocks.
  void listen();

  /// listen() on a background thread; returns once the server accepts.
  void start();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sysrisk::service
