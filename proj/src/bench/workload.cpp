#include "spf/bench/workload.hpp"

#include <bit>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace spf::bench {

void WorkloadConfig::validate() const {
  if (clients == 0 || clients > 128 || !std::has_single_bit(clients)) {
    throw std::invalid_argument("clients must be a power of two between 1 and 128");
  }
  if (queries_per_client == 0) throw std::invalid_argument("queries per client must be positive");
  if (timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
  if (max_omega == 0) throw std::invalid_argument("max omega must be positive");
  parse_load(load);
}

Aggregates aggregate(std::span<const QueryMetrics> rows, double wall_ms) {
  Aggregates a;
  a.wall_ms = wall_ms;
  double qet = 0;
  double qrt = 0;
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      ++a.errors;
    } else if (r.timed_out) {
      ++a.timeouts;
    } else {
      ++a.completed;
    }
    a.total_nrs += r.nrs;
    a.total_ntb += r.ntb;
    a.total_results += r.results;
    qet += r.qet_ms;
    qrt += r.qrt_ms;
  }
  if (!rows.empty()) {
    auto n = static_cast<double>(rows.size());
    a.mean_nrs = static_cast<double>(a.total_nrs) / n;
    a.mean_ntb = static_cast<double>(a.total_ntb) / n;
    a.mean_qet_ms = qet / n;
    a.mean_qrt_ms = qrt / n;
  }
  if (wall_ms > 0) a.throughput_qpm = static_cast<double>(a.completed + a.timeouts) / (wall_ms / 60000.0);
  return a;
}

MetricsReport run_workload(const WorkloadConfig& config, std::span<const GeneratedQuery> queries,
                           const SourceFactory& make_source) {
  config.validate();
  if (queries.empty()) throw std::invalid_argument("the workload has no queries");

  std::vector<std::unique_ptr<client::FragmentSource>> sources;
  for (std::size_t c = 0; c < config.clients; ++c) sources.push_back(make_source());
  sources.front()->check_available();

  client::ExecutionOptions options;
  options.max_omega = config.max_omega;
  options.timeout = std::chrono::duration_cast<std::chrono::milliseconds>(config.timeout);

  std::vector<std::vector<QueryMetrics>> per_client(config.clients);
  auto started = client::Clock::now();
  {
    std::vector<std::jthread> workers;
    for (std::size_t c = 0; c < config.clients; ++c) {
      workers.emplace_back([&, c] {
        auto& rows = per_client[c];
        for (std::size_t i = 0; i < config.queries_per_client; ++i) {
          const auto& q = queries[i % queries.size()];
          auto result = client::run_query(q.query, config.mode, *sources[c], options);
          QueryMetrics m;
          m.client = c;
          m.sequence = i;
          m.query = q.name;
          m.nrs = result.log.nrs();
          m.ntb = result.log.ntb();
          m.qet_ms = result.qet_ms();
          m.qrt_ms = result.qrt_ms();
          m.results = result.rows.size();
          m.timed_out = result.status == client::QueryStatus::timeout;
          if (result.status == client::QueryStatus::transport_error) m.error = result.error;
          rows.push_back(std::move(m));
        }
      });
    }
  }
  double wall_ms = std::chrono::duration<double, std::milli>(client::Clock::now() - started).count();

  MetricsReport report;
  report.config = config;
  for (auto& rows : per_client) {
    for (auto& r : rows) report.per_query.push_back(std::move(r));
  }
  report.aggregates = aggregate(report.per_query, wall_ms);
  return report;
}

std::string MetricsReport::to_json() const {
  using nlohmann::json;
  json cfg = {{"mode", client::to_string(config.mode)},
              {"clients", config.clients},
              {"queriesPerClient", config.queries_per_client},
              {"load", config.load},
              {"timeoutSeconds", config.timeout.count()},
              {"server", config.server_address},
              {"dataset", config.dataset},
              {"seed", config.seed},
              {"maxOmega", config.max_omega}};
  json rows = json::array();
  for (const auto& r : per_query) {
    rows.push_back({{"client", r.client},
                    {"sequence", r.sequence},
                    {"query", r.query},
                    {"nrs", r.nrs},
                    {"ntbBytes", r.ntb},
                    {"qetMs", r.qet_ms},
                    {"qrtMs", r.qrt_ms},
                    {"results", r.results},
                    {"timedOut", r.timed_out},
                    {"error", r.error}});
  }
  const auto& a = aggregates;
  json agg = {{"wallMs", a.wall_ms},
              {"throughputQueriesPerMinute", a.throughput_qpm},
              {"completed", a.completed},
              {"timeouts", a.timeouts},
              {"errors", a.errors},
              {"totalNrs", a.total_nrs},
              {"totalNtbBytes", a.total_ntb},
              {"totalResults", a.total_results},
              {"meanNrs", a.mean_nrs},
              {"meanNtbBytes", a.mean_ntb},
              {"meanQetMs", a.mean_qet_ms},
              {"meanQrtMs", a.mean_qrt_ms}};
  json doc = {{"config", cfg},
              {"perQuery", rows},
              {"aggregates", agg},
              {"notes",
               "NTB counts response bodies plus request targets and bodies; HTTP headers are "
               "excluded. Throughput counts completed and timed-out queries."}};
  return doc.dump(2) + "\n";
}

std::string MetricsReport::to_tsv() const {
  std::ostringstream out;
  out << "# NTB = request target + request body + response body bytes; headers excluded\n";
  out << "client\tsequence\tquery\tnrs\tntb_bytes\tqet_ms\tqrt_ms\tresults\ttimed_out\terror\n";
  for (const auto& r : per_query) {
    out << r.client << '\t' << r.sequence << '\t' << r.query << '\t' << r.nrs << '\t' << r.ntb
        << '\t' << r.qet_ms << '\t' << r.qrt_ms << '\t' << r.results << '\t'
        << (r.timed_out ? "yes" : "no") << '\t' << r.error << '\n';
  }
  const auto& a = aggregates;
  out << "\nmode\t" << client::to_string(config.mode) << "\nclients\t" << config.clients
      << "\nwall_ms\t" << a.wall_ms << "\nthroughput_qpm\t" << a.throughput_qpm << "\ncompleted\t"
      << a.completed << "\ntimeouts\t" << a.timeouts << "\nerrors\t" << a.errors << "\ntotal_nrs\t"
      << a.total_nrs << "\ntotal_ntb_bytes\t" << a.total_ntb << "\nmean_nrs\t" << a.mean_nrs
      << "\nmean_ntb_bytes\t" << a.mean_ntb << "\nmean_qet_ms\t" << a.mean_qet_ms
      << "\nmean_qrt_ms\t" << a.mean_qrt_ms << '\n';
  return out.str();
}

}  // namespace spf::bench
