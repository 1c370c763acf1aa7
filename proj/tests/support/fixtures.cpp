#include "fixtures.hpp"

#include <algorithm>

#include "spf/rdf/ntriples.hpp"
#include "spf/server/dispatch.hpp"

namespace spf::testing {

using rdf::Term;
using rdf::Triple;
using rdf::TriplePattern;

Term ex(const std::string& local) { return Term::iri("http://ex/" + local); }
Term var(const std::string& name) { return Term::variable(name); }
Term lit(const std::string& value) { return Term::plain_literal(value); }

std::vector<Triple> g0_triples() {
  return {
      {ex("alice"), ex("country"), ex("Germany")}, {ex("alice"), ex("award"), ex("X")},
      {ex("alice"), ex("birthDate"), lit("1970")}, {ex("bob"), ex("country"), ex("Norway")},
      {ex("bob"), ex("award"), ex("X")},           {ex("bob"), ex("birthDate"), lit("1980")},
      {ex("carol"), ex("country"), ex("Norway")},  {ex("carol"), ex("award"), ex("Y")},
      {ex("carol"), ex("birthDate"), lit("1975")},
  };
}

std::string g0_ntriples() {
  auto triples = g0_triples();
  return rdf::serialize_ntriples(triples);
}

rdf::StarPattern s1_star() {
  return rdf::StarPattern({{var("p1"), ex("country"), ex("Germany")},
                           {var("p1"), ex("award"), var("a")},
                           {var("p1"), ex("birthDate"), var("bd1")}});
}

rdf::StarPattern s2_star() {
  return rdf::StarPattern({{var("p2"), ex("country"), ex("Norway")},
                           {var("p2"), ex("award"), var("a")},
                           {var("p2"), ex("birthDate"), var("bd2")}});
}

std::string people_query_text() {
  return "PREFIX : <http://ex/>\n"
         "select distinct * where {\n"
         "  ?p1 :country :Germany .\n"
         "  ?p1 :award ?a .\n"
         "  ?p1 :birthDate ?bd1 .\n"
         "  ?p2 :country :Norway .\n"
         "  ?p2 :award ?a .\n"
         "  ?p2 :birthDate ?bd2\n"
         "}\n";
}

client::BGPQuery people_query() { return client::parse_sparql_select(people_query_text()); }

std::vector<Triple> bratlie_triples() {
  auto dbr = [](const std::string& s) { return Term::iri("http://dbpedia.org/resource/" + s); };
  auto dbo = [](const std::string& s) { return Term::iri("http://dbpedia.org/ontology/" + s); };
  return {
      {dbr("Jens_Bratlie"), dbo("country"), dbr("Norway")},
      {dbr("Jens_Bratlie"), dbo("award"), dbr("Order_of_St._Olav")},
      {dbr("Jens_Bratlie"), dbo("birthDate"), lit("1856-1-17")},
      {dbr("Jens_Bratlie"), dbo("party"), dbr("Conservative_Party_(Norway)")},
      {dbr("Carl_Bosch"), dbo("country"), dbr("Germany")},
      {dbr("Carl_Bosch"), dbo("award"), dbr("Nobel_Prize_in_Chemistry")},
      {dbr("Carl_Bosch"), dbo("birthDate"), lit("1874-8-27")},
      {dbr("Oslo"), dbo("country"), dbr("Norway")},
  };
}

rdf::StarPattern bratlie_star() {
  auto dbr = [](const std::string& s) { return Term::iri("http://dbpedia.org/resource/" + s); };
  auto dbo = [](const std::string& s) { return Term::iri("http://dbpedia.org/ontology/" + s); };
  return rdf::StarPattern({{var("p2"), dbo("country"), dbr("Norway")},
                           {var("p2"), dbo("award"), var("a")},
                           {var("p2"), dbo("birthDate"), var("bd2")}});
}

rdf::SolutionMapping mapping(std::initializer_list<std::pair<std::string, Term>> bindings) {
  rdf::SolutionMapping mu;
  for (const auto& [v, t] : bindings) mu.bind(v, t);
  return mu;
}

namespace {

bool unify(const Term& pattern, const Term& value, rdf::SolutionMapping& mu,
           std::vector<std::string>& added) {
  if (!pattern.is_variable()) return pattern == value;
  if (const auto* bound = mu.find(pattern.lexical)) return *bound == value;
  mu.bind(pattern.lexical, value);
  added.push_back(pattern.lexical);
  return true;
}

void backtrack(const std::vector<Triple>& triples, const std::vector<TriplePattern>& patterns,
               std::size_t depth, rdf::SolutionMapping& mu, std::set<rdf::SolutionMapping>& out) {
  if (depth == patterns.size()) {
    out.insert(mu);
    return;
  }
  const auto& tp = patterns[depth];
  for (const auto& t : triples) {
    std::vector<std::string> added;
    rdf::SolutionMapping next = mu;
    if (unify(tp.subject, t.subject, next, added) && unify(tp.predicate, t.predicate, next, added) &&
        unify(tp.object, t.object, next, added)) {
      backtrack(triples, patterns, depth + 1, next, out);
    }
  }
}

}  // namespace

std::set<rdf::SolutionMapping> brute_select_star(const std::vector<Triple>& triples,
                                                 const rdf::StarPattern& sp,
                                                 const fragments::Omega& omega) {
  std::set<rdf::SolutionMapping> all;
  rdf::SolutionMapping mu;
  backtrack(triples, sp.patterns(), 0, mu, all);
  if (omega.empty()) return all;
  std::set<rdf::SolutionMapping> out;
  for (const auto& m : all) {
    if (std::any_of(omega.begin(), omega.end(), [&](const auto& r) { return r.is_subset_of(m); })) {
      out.insert(m);
    }
  }
  return out;
}

namespace {

std::size_t roll(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Term random_subject(std::mt19937_64& rng) {
  auto i = roll(rng, 0, 24);
  return i < 22 ? ex("s" + std::to_string(i)) : Term::blank("b" + std::to_string(i));
}

Term random_predicate(std::mt19937_64& rng) { return ex("p" + std::to_string(roll(rng, 0, 5))); }

Term random_object(std::mt19937_64& rng) {
  auto i = roll(rng, 0, 39);
  if (i < 20) return ex("s" + std::to_string(i));
  if (i < 36) return lit("v" + std::to_string(i % 9));
  return Term::blank("b" + std::to_string(i - 14));
}

}  // namespace

RandomInstance random_instance(std::mt19937_64& rng, std::size_t max_triples, std::size_t max_star,
                               std::size_t max_omega) {
  std::vector<Triple> triples;
  std::size_t n = roll(rng, 0, max_triples);
  for (std::size_t i = 0; i < n; ++i) triples.push_back({random_subject(rng), random_predicate(rng), random_object(rng)});

  std::vector<std::string> var_pool{"o1", "o2", "o3", "x"};
  for (;;) {
    Term root = roll(rng, 0, 9) < 8 ? var("r") : random_subject(rng);
    std::size_t k = roll(rng, 1, max_star);
    std::vector<TriplePattern> patterns;
    for (std::size_t attempt = 0; patterns.size() < k && attempt < 20; ++attempt) {
      Term p = roll(rng, 0, 9) < 8 ? random_predicate(rng) : var(roll(rng, 0, 1) ? "q" : "o1");
      Term o;
      auto r = roll(rng, 0, 9);
      if (r < 3) {
        o = random_object(rng);
      } else if (r == 3 && root.is_variable()) {
        o = root;
      } else {
        o = var(var_pool[roll(rng, 0, var_pool.size() - 1)]);
      }
      TriplePattern tp{root, p, o};
      if (std::find(patterns.begin(), patterns.end(), tp) == patterns.end()) patterns.push_back(tp);
    }
    if (patterns.empty()) continue;
    rdf::StarPattern star(std::move(patterns));

    fragments::Omega omega;
    if (max_omega > 0 && roll(rng, 0, 9) >= 3) {
      auto solutions = brute_select_star(triples, star, {});
      std::vector<rdf::SolutionMapping> pool(solutions.begin(), solutions.end());
      auto vars = star.variables();
      std::size_t size = roll(rng, 1, max_omega);
      std::set<rdf::SolutionMapping> seen;
      for (std::size_t i = 0; i < size * 2 && omega.size() < size; ++i) {
        rdf::SolutionMapping m;
        auto kind = roll(rng, 0, 9);
        if (kind < 6 && !pool.empty()) {
          const auto& full = pool[roll(rng, 0, pool.size() - 1)];
          std::vector<std::string> keep;
          for (const auto& v : vars) {
            if (roll(rng, 0, 2) != 0) keep.push_back(v);
          }
          m = full.restricted_to(keep);
        } else if (kind < 9 && !vars.empty()) {
          m.bind(vars[roll(rng, 0, vars.size() - 1)], random_object(rng));
        } else {
          m.bind("unrelated", random_object(rng));
        }
        if (seen.insert(m).second) omega.push_back(std::move(m));
      }
    }
    return {std::move(triples), std::move(star), std::move(omega)};
  }
}

fragments::Omega omega_of(const server::EncodedRequest& request) {
  if (request.method == server::Method::get) return {};
  server::RawRequest raw{"POST", request.target, {}, request.body};
  return server::dispatch_selector(raw).omega();
}

std::shared_ptr<server::FragmentServer> make_server(const std::vector<Triple>& triples,
                                                    const std::string& dataset) {
  auto server = std::make_shared<server::FragmentServer>(server::ServerConfig{});
  server->add_dataset(dataset, std::make_shared<rdf::Graph>(rdf::Graph::build(triples)));
  return server;
}

}  // namespace spf::testing
