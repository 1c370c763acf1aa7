#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spf/client/decomposition.hpp"
#include "spf/client/source.hpp"
#include "spf/client/sparql.hpp"

namespace spf::client {

enum class Mode : unsigned char { spf, brtpf, tpf };

const char* to_string(Mode mode);
/// Accepts "spf", "brtpf" and "tpf". Throws std::invalid_argument.
Mode parse_mode(const std::string& text);

struct RequestRecord {
  fragments::SelectorKind kind = fragments::SelectorKind::tp;
  std::size_t omega_size = 0;
  std::size_t page = 1;
  std::size_t request_bytes = 0;
  std::size_t response_bytes = 0;
  bool probe = false;
  Clock::time_point started;
  Clock::time_point finished;
  std::string response_body;  // only kept when ExecutionOptions::capture_bodies
};

struct RequestLog {
  std::vector<RequestRecord> records;

  std::size_t nrs() const noexcept { return records.size(); }
  std::size_t ntb() const noexcept;
  /// Omega sizes of the non-probe requests, in issue order.
  std::vector<std::size_t> omega_sizes() const;
};

struct PlannedStar {
  rdf::StarPattern star;
  std::size_t original_index = 0;
  std::size_t cardinality = 0;
  server::PagePayload first_page;
};

struct QueryPlan {
  Mode mode = Mode::spf;
  std::vector<PlannedStar> stars;  // evaluation order
};

struct ExecutionOptions {
  std::size_t max_omega = fragments::kDefaultMaxOmega;
  std::chrono::milliseconds timeout{600'000};
  bool capture_bodies = false;
};

enum class QueryStatus : unsigned char { ok, timeout, transport_error };

const char* to_string(QueryStatus status);

struct QueryResult {
  std::vector<rdf::SolutionMapping> rows;
  RequestLog log;
  QueryStatus status = QueryStatus::ok;
  std::string error;
  Clock::time_point started;
  std::optional<Clock::time_point> first_result;
  Clock::time_point finished;

  double qet_ms() const;
  /// Time to the first result; equals qet_ms() when nothing was produced.
  double qrt_ms() const;
};

/// Called for every result row as soon as it is produced.
using RowSink = std::function<void(const rdf::SolutionMapping&)>;

/// Builds the request for one unit of evaluation. SPF and brTPF requests are
/// POSTed; a singleton star goes out as a tp (or brtp) selector, which is
/// what the star selector reduces to. TPF requests are GETs.
server::EncodedRequest build_request(Mode mode, const std::string& dataset,
                                     const rdf::StarPattern& unit, const fragments::Omega& omega,
                                     std::size_t page);

/// Sends one page-1, empty-Omega request per unit and orders the units.
/// The first unit is the one with the lowest count; after that, the next
/// unit is the lowest-count one sharing a variable with those already
/// placed, or the lowest-count one overall when none does. Ties go to the
/// earlier unit. Probe pages are kept for reuse.
QueryPlan probe_and_order(std::vector<rdf::StarPattern> units, Mode mode, FragmentSource& source,
                          RequestLog& log, const ExecutionOptions& options,
                          Clock::time_point deadline);

/// Restricts each mapping to the star's variables, drops repeats (first
/// occurrence wins) and chunks into batches of at most `max_omega`. No mappings
/// give no batches; when no
/// variable is shared the result is one empty batch.
std::vector<fragments::Omega> project_bindings(std::span<const rdf::SolutionMapping> mappings,
                                               const rdf::StarPattern& sp,
                                               std::size_t max_omega);

/// Runs a plan as a left-deep pipeline. The first unit streams its pages
/// (starting at the cached probe page). In SPF and brTPF mode each later
/// unit is joined by shipping distinct projected upstream bindings in
/// batches of at most max_omega; in TPF mode one request sequence is issued
/// per upstream binding.
QueryResult execute(const BGPQuery& query, const QueryPlan& plan, FragmentSource& source,
                    const ExecutionOptions& options = {}, const RowSink& sink = {});

/// Star-decomposes, probes, orders and executes.
QueryResult execute_spf(const BGPQuery& query, FragmentSource& source,
                        const ExecutionOptions& options = {}, const RowSink& sink = {});
/// Same pipeline with single triple patterns as units and brtp selectors.
QueryResult execute_brtpf(const BGPQuery& query, FragmentSource& source,
                          const ExecutionOptions& options = {}, const RowSink& sink = {});
/// Nested-loop evaluation with plain tp selectors.
QueryResult execute_tpf(const BGPQuery& query, FragmentSource& source,
                        const ExecutionOptions& options = {}, const RowSink& sink = {});

QueryResult run_query(const BGPQuery& query, Mode mode, FragmentSource& source,
                      const ExecutionOptions& options = {}, const RowSink& sink = {});

}  // namespace spf::client
