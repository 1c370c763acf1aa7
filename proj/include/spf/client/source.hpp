#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "spf/fragments/selector.hpp"
#include "spf/server/fragment_server.hpp"
#include "spf/server/wire.hpp"

namespace spf::client {

using Clock = std::chrono::steady_clock;

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class QueryTimeout : public std::runtime_error {
 public:
  QueryTimeout() : std::runtime_error("query timed out") {}
};

struct Fetched {
  server::PagePayload page;
  std::string body;
  std::size_t request_bytes = 0;
  std::size_t response_bytes = 0;
};

/// Where fragment pages come from. Implementations throw TransportError for
/// connection failures and non-200 responses, and QueryTimeout once
/// `deadline` has passed.
class FragmentSource {
 public:
  virtual ~FragmentSource() = default;
  virtual const std::string& dataset() const = 0;
  virtual Fetched fetch(const server::EncodedRequest& request, Clock::time_point deadline) = 0;
  /// Throws TransportError when the server cannot be reached.
  virtual void check_available() {}
};

/// Talks HTTP to a fragment server; keeps one connection alive. One instance
/// per thread.
class HttpFragmentSource final : public FragmentSource {
 public:
  HttpFragmentSource(std::string host, int port, std::string dataset);
  ~HttpFragmentSource() override;

  const std::string& dataset() const override { return dataset_; }
  Fetched fetch(const server::EncodedRequest& request, Clock::time_point deadline) override;

  /// GET /{dataset}/meta; throws TransportError when unreachable.
  std::string meta();
  void check_available() override { meta(); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string dataset_;
};

/// Calls a FragmentServer in-process with the same encoding and byte
/// accounting as the HTTP transport.
class LocalFragmentSource final : public FragmentSource {
 public:
  LocalFragmentSource(std::shared_ptr<const server::FragmentServer> server, std::string dataset);

  const std::string& dataset() const override { return dataset_; }
  Fetched fetch(const server::EncodedRequest& request, Clock::time_point deadline) override;

 private:
  std::shared_ptr<const server::FragmentServer> server_;
  std::string dataset_;
};

/// Parses "host:port" or "http://host:port". Throws std::invalid_argument.
std::pair<std::string, int> parse_server_address(const std::string& address);

}  // namespace spf::client
