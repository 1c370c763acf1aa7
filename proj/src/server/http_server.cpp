#include "spf/server/http_server.hpp"

#include <stdexcept>

#include "httplib.h"

namespace spf::server {

namespace {

constexpr const char* kJson = "application/json";

}  // namespace

HttpServer::HttpServer(std::shared_ptr<const FragmentServer> handler)
    : handler_(std::move(handler)), http_(std::make_unique<httplib::Server>()) {
  std::size_t threads = handler_->config().threads;
  http_->new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  http_->set_keep_alive_max_count(1000000);
  http_->set_keep_alive_timeout(60);
  http_->set_tcp_nodelay(true);

  auto serve = [this](const httplib::Request& req, httplib::Response& res) {
    RawRequest raw{req.method, req.path, {req.params.begin(), req.params.end()}, req.body};
    Response out = handler_->handle(raw);
    res.status = out.status;
    res.set_content(std::move(out.body), kJson);
  };
  http_->Get(".*", serve);
  http_->Post(".*", serve);
  http_->Put(".*", serve);
  http_->Delete(".*", serve);
  http_->Patch(".*", serve);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? http_->bind_to_any_port(host) : (http_->bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::serve() { http_->listen_after_bind(); }

void HttpServer::start() {
  worker_ = std::thread([this] { http_->listen_after_bind(); });
  http_->wait_until_ready();
}

void HttpServer::stop() {
  if (http_) http_->stop();
  if (worker_.joinable()) worker_.join();
}

}  // namespace spf::server
