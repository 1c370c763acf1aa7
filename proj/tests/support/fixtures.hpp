#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spf/client/source.hpp"
#include "spf/client/sparql.hpp"
#include "spf/fragments/selector.hpp"
#include "spf/rdf/graph.hpp"

namespace spf::testing {

rdf::Term ex(const std::string& local);
rdf::Term var(const std::string& name);
rdf::Term lit(const std::string& value);

/// alice/bob/carol with country, award and birthDate in the http://ex/
/// namespace.
std::vector<rdf::Triple> g0_triples();
std::string g0_ntriples();

rdf::StarPattern s1_star();  // ?p1 country Germany, award ?a, birthDate ?bd1
rdf::StarPattern s2_star();  // ?p2 country Norway, award ?a, birthDate ?bd2

/// The two stars above joined on ?a, as SELECT DISTINCT *.
std::string people_query_text();
client::BGPQuery people_query();

/// A small DBpedia-style graph around dbr:Jens_Bratlie.
std::vector<rdf::Triple> bratlie_triples();
rdf::StarPattern bratlie_star();

rdf::SolutionMapping mapping(std::initializer_list<std::pair<std::string, rdf::Term>> bindings);

/// Every mu over the variables of `sp` whose ground triples are all in
/// `triples`, found by backtracking over the whole triple list, filtered
/// by "some element of omega is a subset of mu" when omega is non-empty.
std::set<rdf::SolutionMapping> brute_select_star(const std::vector<rdf::Triple>& triples,
                                                 const rdf::StarPattern& sp,
                                                 const fragments::Omega& omega);

struct RandomInstance {
  std::vector<rdf::Triple> triples;
  rdf::StarPattern star;
  fragments::Omega omega;
};

/// Random graph of at most `max_triples` triples over a small vocabulary
/// (IRIs, literals and blank nodes), a star of at most `max_star` patterns
/// and a distinct Omega of at most `max_omega` mappings drawn partly from
/// real solutions.
RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_triples, std::size_t max_star,
                               std::size_t max_omega);

/// Forwards to another source and keeps every request it sees.
class RecordingSource final : public client::FragmentSource {
 public:
  explicit RecordingSource(client::FragmentSource& inner) : inner_(inner) {}
  const std::string& dataset() const override { return inner_.dataset(); }
  client::Fetched fetch(const server::EncodedRequest& request, client::Clock::time_point deadline) override {
    requests.push_back(request);
    return inner_.fetch(request, deadline);
  }

  std::vector<server::EncodedRequest> requests;

 private:
  client::FragmentSource& inner_;
};

/// Omega carried by a POST request body; empty for GET requests.
fragments::Omega omega_of(const server::EncodedRequest& request);

std::shared_ptr<server::FragmentServer> make_server(const std::vector<rdf::Triple>& triples,
                                                    const std::string& dataset = "data");

}  // namespace spf::testing
