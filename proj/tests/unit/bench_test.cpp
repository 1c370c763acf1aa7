#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fixtures.hpp"
#include "json.hpp"
#include "spf/bench/generator.hpp"
#include "spf/bench/oracle.hpp"
#include "spf/bench/workload.hpp"
#include "spf/client/decomposition.hpp"
#include "spf/rdf/ntriples.hpp"
#include "spf/server/http_server.hpp"

namespace spf::bench {
namespace {

using testing::ex;
using testing::lit;
using testing::mapping;

TEST(Oracle, PeopleQueryOnG0) {
  auto rows = oracle_evaluate(testing::g0_triples(), testing::people_query());
  EXPECT_EQ(rows, std::vector<rdf::SolutionMapping>{mapping({{"p1", ex("alice")},
                                                             {"a", ex("X")},
                                                             {"bd1", lit("1970")},
                                                             {"p2", ex("bob")},
                                                             {"bd2", lit("1980")}})});
}

TEST(Oracle, BagAndSetSemantics) {
  auto g0 = testing::g0_triples();
  auto doubled = g0;
  doubled.insert(doubled.end(), g0.begin(), g0.end());
  auto bag = client::parse_sparql_select("PREFIX : <http://ex/> SELECT ?a { ?p :award ?a }");
  EXPECT_EQ(oracle_evaluate(doubled, bag).size(), 3u);
  bag.distinct = true;
  EXPECT_EQ(oracle_evaluate(doubled, bag).size(), 2u);
  auto none = client::parse_sparql_select("PREFIX : <http://ex/> SELECT * { ?p :award :Z }");
  EXPECT_TRUE(oracle_evaluate(g0, none).empty());
  auto repeated = client::parse_sparql_select("SELECT * { ?x ?p ?x }");
  std::vector<rdf::Triple> loop{{ex("a"), ex("p"), ex("a")}, {ex("a"), ex("p"), ex("b")}};
  EXPECT_EQ(oracle_evaluate(loop, repeated).size(), 1u);
}

TEST(Generator, Determinism) {
  auto a = rdf::serialize_ntriples(generate_dataset(200, 42));
  auto b = rdf::serialize_ntriples(generate_dataset(200, 42));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, rdf::serialize_ntriples(generate_dataset(200, 43)));
  auto data = generate_dataset(200, 42);
  auto q1 = generate_queries(Load::mixed, 8, data, 5);
  auto q2 = generate_queries(Load::mixed, 8, data, 5);
  ASSERT_EQ(q1.size(), q2.size());
  for (std::size_t i = 0; i < q1.size(); ++i) EXPECT_EQ(client::to_sparql(q1[i].query), client::to_sparql(q2[i].query));
  EXPECT_THROW(generate_dataset(0, 1), std::invalid_argument);
}

TEST(Generator, SmallDatasetHasTheFixtureShape) {
  auto data = generate_dataset(3, 1);
  std::map<rdf::Term, std::set<std::string>> predicates;
  for (const auto& t : data) predicates[t.subject].insert(t.predicate.lexical);
  ASSERT_EQ(predicates.size(), 3u);
  for (const auto& [s, ps] : predicates) {
    for (const char* name : {"country", "award", "birthDate"}) {
      EXPECT_TRUE(ps.contains(std::string(kExampleNamespace) + "vocab/" + name));
    }
  }
}

TEST(Generator, DatasetSizeBounds) {
  auto data = generate_dataset(1000, 9);
  std::size_t links = 0;
  for (const auto& t : data) {
    if (t.predicate.lexical.ends_with("knows") || t.predicate.lexical.ends_with("follows") ||
        t.predicate.lexical.ends_with("worksWith")) {
      ++links;
    }
  }
  EXPECT_GE(data.size(), 3000u);
  EXPECT_LE(data.size(), 8000u + links);
  EXPECT_EQ(rdf::Graph::build(data).size(), data.size());
}

TEST(Generator, QueryShapes) {
  auto data = generate_dataset(600, 3);
  for (auto [load, k] : {std::pair{Load::one_star, 1u}, std::pair{Load::two_stars, 2u}, std::pair{Load::three_stars, 3u}}) {
    auto queries = generate_queries(load, 5, data, 11);
    ASSERT_EQ(queries.size(), 5u);
    for (const auto& q : queries) {
      auto d = client::star_decompose(q.query);
      EXPECT_EQ(d.stars.size(), k) << q.name;
      for (const auto& s : d.stars) EXPECT_GE(s.size(), 2u) << q.name;
      EXPECT_FALSE(oracle_evaluate(data, q.query).empty());
    }
  }
  auto paths = generate_queries(Load::paths, 40, data, 11);
  double total = 0;
  for (const auto& q : paths) {
    auto d = client::star_decompose(q.query);
    for (const auto& s : d.stars) EXPECT_EQ(s.size(), 1u);
    EXPECT_GE(q.query.patterns.size(), 5u);
    EXPECT_LE(q.query.patterns.size(), 9u);
    for (std::size_t i = 1; i < q.query.patterns.size(); ++i) {
      EXPECT_EQ(q.query.patterns[i].subject, q.query.patterns[i - 1].object);
    }
    total += static_cast<double>(q.query.patterns.size());
    EXPECT_FALSE(oracle_evaluate(data, q.query).empty());
  }
  EXPECT_NEAR(total / static_cast<double>(paths.size()), 7.0, 1.0);
  std::set<std::string> distinct;
  for (const auto& q : paths) distinct.insert(client::to_sparql(q.query));
  EXPECT_EQ(distinct.size(), paths.size());
}

TEST(Generator, FailureNamesTheLoad) {
  std::vector<rdf::Triple> flat{{ex("a"), ex("p"), lit("1")}};
  try {
    generate_queries(Load::paths, 1, flat, 1);
    FAIL() << "expected GenerationError";
  } catch (const GenerationError& e) {
    EXPECT_NE(std::string(e.what()).find("paths"), std::string::npos);
  }
  EXPECT_EQ(parse_load("2-stars"), Load::two_stars);
  EXPECT_THROW(parse_load("4-stars"), std::invalid_argument);
}

TEST(Generator, WritesFiles) {
  auto dir = std::filesystem::temp_directory_path() / "spf_bench_test_queries";
  std::filesystem::remove_all(dir);
  auto data = generate_dataset(100, 2);
  auto queries = generate_queries(Load::one_star, 3, data, 2);
  auto paths = write_queries(dir.string(), queries);
  ASSERT_EQ(paths.size(), 3u);
  std::ifstream in(paths[0]);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(client::parse_sparql_select(text.str()).patterns, queries[0].query.patterns);
  EXPECT_THROW(write_dataset("/nonexistent-dir/x.nt", 3, 1), std::runtime_error);
  std::filesystem::remove_all(dir);
}

class G0Workload : public ::testing::Test {
 protected:
  void SetUp() override {
    server = testing::make_server(testing::g0_triples(), "g0");
    http = std::make_unique<server::HttpServer>(server);
    port = http->bind("127.0.0.1", 0);
    http->start();
  }
  void TearDown() override { http->stop(); }

  MetricsReport run(client::Mode mode, std::size_t clients, std::vector<GeneratedQuery> queries) {
    WorkloadConfig cfg;
    cfg.mode = mode;
    cfg.clients = clients;
    cfg.queries_per_client = queries.size();
    cfg.dataset = "g0";
    cfg.server_address = "127.0.0.1:" + std::to_string(port);
    return run_workload(cfg, queries, [&] {
      return std::make_unique<client::HttpFragmentSource>("127.0.0.1", port, "g0");
    });
  }

  std::shared_ptr<server::FragmentServer> server;
  std::unique_ptr<server::HttpServer> http;
  int port = 0;
};

TEST_F(G0Workload, PeopleQueryMetrics) {
  std::vector<GeneratedQuery> list{{"people", testing::people_query()}};
  auto spf = run(client::Mode::spf, 1, list);
  ASSERT_EQ(spf.per_query.size(), 1u);
  EXPECT_EQ(spf.per_query[0].nrs, 3u);
  EXPECT_EQ(spf.per_query[0].results, 1u);
  EXPECT_FALSE(spf.per_query[0].timed_out);
  EXPECT_LE(spf.per_query[0].qrt_ms, spf.per_query[0].qet_ms);
  auto tpf = run(client::Mode::tpf, 1, list);
  EXPECT_GT(tpf.per_query[0].nrs, spf.per_query[0].nrs);

  auto json = nlohmann::json::parse(spf.to_json());
  EXPECT_TRUE(json.contains("config"));
  EXPECT_EQ(json.at("perQuery").size(), 1u);
  EXPECT_EQ(json.at("aggregates").at("totalNrs"), 3);
  EXPECT_NE(spf.to_tsv().find("people\t3\t"), std::string::npos);
}

TEST_F(G0Workload, TwoClientsSeeTheSameCounts) {
  auto data = testing::g0_triples();
  std::vector<GeneratedQuery> list{
      {"people", testing::people_query()},
      {"norway", client::parse_sparql_select("PREFIX : <http://ex/> SELECT * { ?p :country :Norway ; :award ?a }")}};
  auto one = run(client::Mode::brtpf, 1, list);
  auto two = run(client::Mode::brtpf, 2, list);
  ASSERT_EQ(two.per_query.size(), 4u);
  for (const auto& row : two.per_query) {
    EXPECT_EQ(row.nrs, one.per_query[row.sequence].nrs);
    EXPECT_EQ(row.ntb, one.per_query[row.sequence].ntb);
  }
  std::size_t nrs = 0;
  for (const auto& row : two.per_query) nrs += row.nrs;
  EXPECT_EQ(two.aggregates.total_nrs, nrs);
  EXPECT_EQ(two.aggregates.completed, 4u);
  EXPECT_GT(two.aggregates.throughput_qpm, 0.0);
}

TEST(Workload, ValidationAndUnreachableServer) {
  WorkloadConfig cfg;
  cfg.clients = 3;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.clients = 256;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.clients = 4;
  cfg.load = "5-stars";
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.load = "paths";
  cfg.queries_per_client = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg.queries_per_client = 1;
  EXPECT_NO_THROW(cfg.validate());

  std::vector<GeneratedQuery> list{{"q", testing::people_query()}};
  EXPECT_THROW(run_workload(cfg, list,
                            [] { return std::make_unique<client::HttpFragmentSource>("127.0.0.1", 1, "g0"); }),
               client::TransportError);
}

TEST(Workload, AggregatesCountTimeoutsSeparately) {
  std::vector<QueryMetrics> rows(3);
  rows[0].nrs = 2;
  rows[1].timed_out = true;
  rows[1].nrs = 5;
  rows[2].error = "boom";
  auto a = aggregate(rows, 60000.0);
  EXPECT_EQ(a.completed, 1u);
  EXPECT_EQ(a.timeouts, 1u);
  EXPECT_EQ(a.errors, 1u);
  EXPECT_DOUBLE_EQ(a.throughput_qpm, 2.0);
  EXPECT_EQ(a.total_nrs, 7u);
}

}  // namespace
}  // namespace spf::bench
