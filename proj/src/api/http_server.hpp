#pragma once

#include <functional>
#include <memory>
#include <string>

#include "api/router.hpp"

namespace agilekb::api {

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;          // 0 picks a free port
  std::string static_dir;   // served at "/" when set
  std::size_t threads = 8;
  RouterOptions router;
  // One line per request; defaults to stderr.
  std::function<void(const std::string&)> access_log;
};

// HTTP/1.1 front end: /api/v1/* goes to ApiRouter, everything else to the
// static directory.
class HttpServer {
 public:
  HttpServer(kb::KnowledgeBase& kb, ServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Throws Io when the address is taken. Returns the bound port.
  int bind();
  // Blocks until stop(). bind() must have succeeded.
  void listen();
  void stop();
  bool running() const;
  int port() const noexcept { return port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int port_ = 0;
};

}  // namespace agilekb::api
