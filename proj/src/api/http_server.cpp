#include "api/http_server.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <iostream>
#include <sstream>
#include <thread>

namespace agilekb::api {

struct HttpServer::Impl {
  Impl(kb::KnowledgeBase& kb, ServerOptions opts) : options(std::move(opts)), router(kb, options.router) {}

  ServerOptions options;
  ApiRouter router;
  httplib::Server server;
  std::atomic<bool> stop_requested{false};
  std::atomic<bool> listening{false};
};

namespace {

// Start of the request being handled on this worker thread.
thread_local std::chrono::steady_clock::time_point request_start;

}  // namespace

HttpServer::HttpServer(kb::KnowledgeBase& kb, ServerOptions options)
    : impl_(std::make_unique<Impl>(kb, std::move(options))) {
  auto& srv = impl_->server;
  const std::size_t threads = std::max<std::size_t>(1, impl_->options.threads);
  srv.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };

  if (!impl_->options.access_log) {
    impl_->options.access_log = [](const std::string& line) { std::cerr << line << std::endl; };
  }

  srv.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
    request_start = std::chrono::steady_clock::now();
    // Use the raw target so percent escapes are decoded exactly once.
    std::string_view target = req.target;
    std::string_view path = target.substr(0, target.find('?'));
    if (path.substr(0, 5) != "/api/") return httplib::Server::HandlerResponse::Unhandled;
    std::string_view query;
    if (auto q = target.find('?'); q != std::string_view::npos) query = target.substr(q + 1);
    ApiResponse r = impl_->router.handle(req.method, path, query, req.body);
    res.status = r.status;
    for (const auto& [name, value] : r.headers) res.set_header(name, value);
    res.set_content(r.body, r.content_type);
    return httplib::Server::HandlerResponse::Handled;
  });

  srv.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
    const auto ms = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                                          request_start)
                        .count() /
                    1000.0;
    std::ostringstream line;
    line.imbue(std::locale::classic());
    line << req.remote_addr << " \"" << req.method << ' ' << req.target << "\" " << res.status << ' '
         << res.body.size() << ' ' << ms << "ms";
    impl_->options.access_log(line.str());
  });

  if (!impl_->options.static_dir.empty()) srv.set_mount_point("/", impl_->options.static_dir);

  // httplib's default also sets SO_REUSEPORT, which lets a second server
  // share a busy port instead of failing.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  auto& srv = impl_->server;
  const auto& o = impl_->options;
  if (o.port == 0) {
    port_ = srv.bind_to_any_port(o.host);
  } else {
    port_ = srv.bind_to_port(o.host, o.port) ? o.port : -1;
  }
  if (port_ < 0) {
    port_ = 0;
    throw Error(ErrorCode::Io, "cannot listen on " + o.host + ":" + std::to_string(o.port));
  }
  return port_;
}

void HttpServer::listen() {
  impl_->listening = true;
  if (!impl_->stop_requested) impl_->server.listen_after_bind();
  impl_->listening = false;
}

void HttpServer::stop() {
  impl_->stop_requested = true;
  // A stop racing with listen() must wait until the accept loop is up,
  // otherwise httplib ignores it.
  while (impl_->listening && !impl_->server.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(1));
  impl_->server.stop();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace agilekb::api
