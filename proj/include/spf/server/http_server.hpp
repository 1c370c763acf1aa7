#pragma once

#include <memory>
#include <string>
#include <thread>

#include "spf/server/fragment_server.hpp"

namespace httplib {
class Server;
}

namespace spf::server {

/// HTTP front end for a FragmentServer.
///
///   GET  /{dataset}/fragment?s=&p=&o=&page=   tp selector
///   POST /{dataset}/fragment                  tp, brtp or star selector
///   GET  /{dataset}/meta                      {tripleCount,pageSize,maxOmega}
class HttpServer {
 public:
  explicit HttpServer(std::shared_ptr<const FragmentServer> handler);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port`, or an ephemeral port when `port` is 0. Returns the
  /// bound port. Throws std::runtime_error when binding fails.
  int bind(const std::string& host, int port);

  /// Serves on the calling thread until stop().
  void serve();
  /// Serves on a background thread.
  void start();
  void stop();

 private:
  std::shared_ptr<const FragmentServer> handler_;
  std::unique_ptr<httplib::Server> http_;
  std::thread worker_;
};

}  // namespace spf::server
