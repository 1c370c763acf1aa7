#include <algorithm>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "spf/bench/generator.hpp"
#include "spf/bench/oracle.hpp"
#include "spf/bench/workload.hpp"
#include "spf/client/executor.hpp"
#include "spf/client/source.hpp"
#include "spf/rdf/graph.hpp"
#include "spf/rdf/ntriples.hpp"
#include "spf/server/http_server.hpp"

namespace {

using namespace spf;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out.flush()) throw std::runtime_error("cannot write '" + path + "'");
}

void print_rows(const std::vector<std::string>& vars, const std::vector<rdf::SolutionMapping>& rows,
                const std::string& format) {
  if (format == "json") {
    nlohmann::json doc = {{"variables", vars}, {"rows", nlohmann::json::array()}};
    for (const auto& row : rows) {
      nlohmann::json r = nlohmann::json::object();
      for (const auto& [v, t] : row.bindings()) r[v] = rdf::to_string(t);
      doc["rows"].push_back(std::move(r));
    }
    std::cout << doc.dump() << '\n';
    return;
  }
  for (std::size_t i = 0; i < vars.size(); ++i) std::cout << (i ? "\t" : "") << '?' << vars[i];
  std::cout << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const auto* t = row.find(vars[i]);
      std::cout << (i ? "\t" : "") << (t ? rdf::to_string(*t) : "");
    }
    std::cout << '\n';
  }
}

std::vector<bench::GeneratedQuery> load_query_dir(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".rq") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw std::runtime_error("no .rq files in '" + dir + "'");
  std::vector<bench::GeneratedQuery> out;
  for (const auto& f : files) {
    out.push_back({f.stem().string(), client::parse_sparql_select(read_file(f.string()))});
  }
  return out;
}

server::HttpServer* g_server = nullptr;

void on_signal(int) {
  if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Star Pattern Fragments server, client and benchmark tools"};
  app.require_subcommand(1);

  server::ServerConfig scfg;
  auto* serve = app.add_subcommand("serve", "Serve an N-Triples dataset over HTTP");
  serve->add_option("--data", scfg.dataset_path, "N-Triples file")->required()->check(CLI::ExistingFile);
  serve->add_option("--dataset", scfg.dataset_name, "Dataset name in URLs")->capture_default_str();
  serve->add_option("--host", scfg.host)->capture_default_str();
  serve->add_option("--port", scfg.port)->capture_default_str();
  serve->add_option("--page-size", scfg.page_size)->capture_default_str();
  serve->add_option("--max-omega", scfg.max_omega)->capture_default_str();
  serve->add_option("--max-star-size", scfg.max_star_size)->capture_default_str();
  serve->add_option("--threads", scfg.threads, "Worker threads")->capture_default_str();

  std::string mode_text = "spf";
  std::string server_address = "127.0.0.1:5000";
  std::string dataset = "data";
  std::string query_path;
  std::string format = "tsv";
  bool stats = false;
  double timeout_s = 600;
  std::size_t max_omega = fragments::kDefaultMaxOmega;
  auto* query = app.add_subcommand("query", "Run one SPARQL query against a server");
  query->add_option("--mode", mode_text, "spf, brtpf or tpf")
      ->check(CLI::IsMember({"spf", "brtpf", "tpf"}))
      ->capture_default_str();
  query->add_option("--server", server_address, "host:port")->capture_default_str();
  query->add_option("--dataset", dataset)->capture_default_str();
  query->add_option("--query", query_path, "SPARQL file")->required()->check(CLI::ExistingFile);
  query->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();
  query->add_flag("--stats", stats, "Print NRS/NTB/QET/QRT to stderr");
  query->add_option("--timeout", timeout_s, "Seconds")->check(CLI::PositiveNumber)->capture_default_str();
  query->add_option("--max-omega", max_omega)->check(CLI::PositiveNumber)->capture_default_str();

  std::size_t entities = 1000;
  std::uint64_t seed = 1;
  std::string out_path;
  auto* gen_data = app.add_subcommand("gen-data", "Generate a synthetic N-Triples dataset");
  gen_data->add_option("--entities", entities)->check(CLI::PositiveNumber)->capture_default_str();
  gen_data->add_option("--seed", seed)->capture_default_str();
  gen_data->add_option("--out", out_path, "Output file")->required();

  std::string data_path;
  std::string load = "union";
  std::size_t count = 25;
  auto* gen_queries = app.add_subcommand("gen-queries", "Generate non-empty queries for a dataset");
  gen_queries->add_option("--data", data_path)->required()->check(CLI::ExistingFile);
  gen_queries->add_option("--load", load, "1-star, 2-stars, 3-stars, paths or union")
      ->check(CLI::IsMember({"1-star", "2-stars", "3-stars", "paths", "union"}))
      ->capture_default_str();
  gen_queries->add_option("--count", count)->check(CLI::PositiveNumber)->capture_default_str();
  gen_queries->add_option("--seed", seed)->capture_default_str();
  gen_queries->add_option("--out", out_path, "Output directory")->required();

  bench::WorkloadConfig wcfg;
  std::string queries_dir;
  std::string report_prefix = "report";
  std::int64_t bench_timeout = 600;
  auto* bench_cmd = app.add_subcommand("bench", "Run a concurrent workload against a server");
  bench_cmd->add_option("--mode", mode_text)
      ->check(CLI::IsMember({"spf", "brtpf", "tpf"}))
      ->capture_default_str();
  bench_cmd->add_option("--clients", wcfg.clients, "Power of two, 1..128")->capture_default_str();
  bench_cmd->add_option("--queries", queries_dir, "Directory of .rq files")->required()->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--queries-per-client", wcfg.queries_per_client,
                        "Defaults to the number of query files");
  bench_cmd->add_option("--load", wcfg.load, "Label recorded in the report")
      ->check(CLI::IsMember({"1-star", "2-stars", "3-stars", "paths", "union"}))
      ->capture_default_str();
  bench_cmd->add_option("--server", wcfg.server_address)->capture_default_str();
  bench_cmd->add_option("--dataset", wcfg.dataset)->capture_default_str();
  bench_cmd->add_option("--timeout", bench_timeout, "Seconds per query")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--seed", wcfg.seed, "Recorded in the report")->capture_default_str();
  bench_cmd->add_option("--max-omega", wcfg.max_omega)->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--out", report_prefix, "Writes <out>.json and <out>.tsv")->capture_default_str();

  auto* oracle = app.add_subcommand("oracle", "Evaluate a query by brute force over a local file");
  oracle->add_option("--data", data_path)->required()->check(CLI::ExistingFile);
  oracle->add_option("--query", query_path)->required()->check(CLI::ExistingFile);
  oracle->add_option("--format", format)->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*serve) {
      scfg.validate();
      auto graph = std::make_shared<rdf::Graph>(rdf::Graph::build(rdf::load_ntriples_file(scfg.dataset_path)));
      std::size_t triples = graph->size();
      auto handler = std::make_shared<server::FragmentServer>(scfg);
      handler->add_dataset(scfg.dataset_name, std::move(graph));
      server::HttpServer http(handler);
      int port = http.bind(scfg.host, scfg.port);
      std::cerr << "serving " << triples << " triples as '" << scfg.dataset_name << "' on http://"
                << scfg.host << ':' << port << '\n';
      g_server = &http;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      http.serve();
      g_server = nullptr;
    } else if (*query) {
      auto q = client::parse_sparql_select(read_file(query_path));
      auto [host, port] = client::parse_server_address(server_address);
      client::HttpFragmentSource source(host, port, dataset);
      source.check_available();
      client::ExecutionOptions options;
      options.max_omega = max_omega;
      options.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(timeout_s * 1000));
      auto result = client::run_query(q, client::parse_mode(mode_text), source, options);
      print_rows(q.result_variables(), result.rows, format);
      if (stats) {
        std::cerr << "status=" << client::to_string(result.status) << " nrs=" << result.log.nrs()
                  << " ntb=" << result.log.ntb() << " qet_ms=" << result.qet_ms()
                  << " qrt_ms=" << result.qrt_ms() << " results=" << result.rows.size() << '\n';
      }
      if (result.status != client::QueryStatus::ok) {
        std::cerr << "error: " << result.error << '\n';
        return result.status == client::QueryStatus::timeout ? 3 : 1;
      }
    } else if (*gen_data) {
      bench::write_dataset(out_path, entities, seed);
    } else if (*gen_queries) {
      auto data = rdf::load_ntriples_file(data_path);
      auto queries = bench::generate_queries(bench::parse_load(load), count, data, seed);
      for (const auto& path : bench::write_queries(out_path, queries)) std::cout << path << '\n';
    } else if (*bench_cmd) {
      auto queries = load_query_dir(queries_dir);
      wcfg.mode = client::parse_mode(mode_text);
      wcfg.timeout = std::chrono::seconds(bench_timeout);
      if (bench_cmd->count("--queries-per-client") == 0) wcfg.queries_per_client = queries.size();
      auto [host, port] = client::parse_server_address(wcfg.server_address);
      auto report = bench::run_workload(wcfg, queries, [&, host = host, port = port] {
        return std::make_unique<client::HttpFragmentSource>(host, port, wcfg.dataset);
      });
      write_file(report_prefix + ".json", report.to_json());
      write_file(report_prefix + ".tsv", report.to_tsv());
      const auto& a = report.aggregates;
      std::cout << "clients=" << wcfg.clients << " completed=" << a.completed
                << " timeouts=" << a.timeouts << " errors=" << a.errors
                << " throughput_qpm=" << a.throughput_qpm << " mean_nrs=" << a.mean_nrs
                << " mean_ntb=" << a.mean_ntb << '\n';
    } else if (*oracle) {
      auto q = client::parse_sparql_select(read_file(query_path));
      auto rows = bench::oracle_evaluate(rdf::load_ntriples_file(data_path), q);
      print_rows(q.result_variables(), rows, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
