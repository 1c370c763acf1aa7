#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "spf/bench/generator.hpp"
#include "spf/client/executor.hpp"

namespace spf::bench {

struct WorkloadConfig {
  client::Mode mode = client::Mode::spf;
  std::size_t clients = 1;
  std::size_t queries_per_client = 1;
  std::string load = "union";
  std::chrono::seconds timeout{600};
  std::string server_address = "127.0.0.1:5000";
  std::string dataset = "data";
  std::uint64_t seed = 1;
  std::size_t max_omega = fragments::kDefaultMaxOmega;

  /// Throws std::invalid_argument when a count is zero, the client count is
  /// not a power of two in 1..128, or the load label is unknown.
  void validate() const;
};

struct QueryMetrics {
  std::size_t client = 0;
  std::size_t sequence = 0;  // position in the client's list
  std::string query;
  std::size_t nrs = 0;
  std::size_t ntb = 0;
  double qet_ms = 0;
  double qrt_ms = 0;
  std::size_t results = 0;
  bool timed_out = false;
  std::string error;  // transport failures
};

struct Aggregates {
  double wall_ms = 0;
  double throughput_qpm = 0;  // finished (completed or timed out) queries per minute
  std::size_t completed = 0;
  std::size_t timeouts = 0;
  std::size_t errors = 0;
  std::size_t total_nrs = 0;
  std::size_t total_ntb = 0;
  std::size_t total_results = 0;
  double mean_nrs = 0;
  double mean_ntb = 0;
  double mean_qet_ms = 0;
  double mean_qrt_ms = 0;
};

struct MetricsReport {
  WorkloadConfig config;
  std::vector<QueryMetrics> per_query;
  Aggregates aggregates;

  /// {config, perQuery:[...], aggregates:{...}, notes}
  std::string to_json() const;
  /// One row per query followed by a summary block.
  std::string to_tsv() const;
};

using SourceFactory = std::function<std::unique_ptr<client::FragmentSource>()>;

/// Runs `config.clients` workers, each executing queries[0..queries_per_client)
/// (cycling through the list when it is shorter) one after another in
/// config.mode. Each worker gets its own source from `make_source`. Throws
/// client::TransportError when the first source cannot reach the server.
MetricsReport run_workload(const WorkloadConfig& config, std::span<const GeneratedQuery> queries,
                           const SourceFactory& make_source);

/// Computes the aggregates of a report's per-query rows.
Aggregates aggregate(std::span<const QueryMetrics> rows, double wall_ms);

}  // namespace spf::bench
