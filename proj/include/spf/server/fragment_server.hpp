#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>

#include "spf/fragments/fragment.hpp"
#include "spf/rdf/graph.hpp"
#include "spf/server/dispatch.hpp"

namespace spf::server {

struct ServerConfig {
  std::string dataset_path;
  std::string dataset_name = "data";
  std::size_t page_size = fragments::kDefaultPageSize;
  std::size_t max_omega = fragments::kDefaultMaxOmega;
  std::size_t max_star_size = 16;
  std::string host = "127.0.0.1";
  int port = 5000;
  std::size_t threads = 160;

  /// Throws std::invalid_argument for non-positive limits.
  void validate() const;
};

struct Response {
  int status = 200;
  std::string body;
};

/// Stateless request handler over a set of immutable graphs. Safe to call
/// from any number of threads.
class FragmentServer {
 public:
  explicit FragmentServer(ServerConfig config);

  /// Registers a dataset. Not thread-safe; call before serving.
  void add_dataset(const std::string& name, std::shared_ptr<const rdf::Graph> graph);

  const ServerConfig& config() const noexcept { return config_; }

  /// Evaluates the selector and returns the requested page. Throws
  /// RequestError: 404 for an unknown dataset, 422 when a limit is exceeded.
  fragments::FragmentPage handle_fragment_request(const FragmentRequest& request) const;

  /// Full request cycle: routing, dispatch, evaluation and serialization.
  /// Errors become a JSON body {"error":..., "status":...}.
  Response handle(const RawRequest& request) const;

  /// Identifier of the fragment a selector denotes: s/p/o parameters for a
  /// tp selector, a digest of the canonical selector otherwise.
  static std::string fragment_uri(const std::string& dataset,
                                  const fragments::SelectorSpec& selector);

 private:
  const rdf::Graph& dataset(const std::string& name) const;

  ServerConfig config_;
  std::map<std::string, std::shared_ptr<const rdf::Graph>> datasets_;
};

}  // namespace spf::server
