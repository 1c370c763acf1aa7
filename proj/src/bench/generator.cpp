#include "spf/bench/generator.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "spf/bench/oracle.hpp"
#include "spf/rdf/ntriples.hpp"

namespace spf::bench {

using rdf::Term;
using rdf::Triple;
using rdf::TriplePattern;

const char* to_string(Load load) {
  switch (load) {
    case Load::one_star:
      return "1-star";
    case Load::two_stars:
      return "2-stars";
    case Load::three_stars:
      return "3-stars";
    case Load::paths:
      return "paths";
    case Load::mixed:
      return "union";
  }
  return "?";
}

Load parse_load(const std::string& label) {
  for (auto load : {Load::one_star, Load::two_stars, Load::three_stars, Load::paths, Load::mixed}) {
    if (label == to_string(load)) return load;
  }
  throw std::invalid_argument("unknown query load '" + label +
                              "' (expected 1-star, 2-stars, 3-stars, paths or union)");
}

namespace {

using Rng = std::mt19937_64;

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& items) {
  return items[uniform(rng, 0, items.size() - 1)];
}

std::string vocab(const std::string& name) { return std::string(kExampleNamespace) + "vocab/" + name; }

struct Attribute {
  const char* predicate;
  const char* value_prefix;  // nullptr for literal-valued attributes
  std::size_t domain;
};

// The first three are always present.
constexpr std::array<Attribute, 13> kAttributes{{
    {"country", "country/C", 30},
    {"award", "award/A", 40},
    {"birthDate", nullptr, 0},
    {"name", nullptr, 0},
    {"occupation", "occupation/O", 25},
    {"genre", "genre/G", 20},
    {"language", "language/L", 15},
    {"city", "city/T", 60},
    {"employer", "org/E", 50},
    {"team", "team/M", 40},
    {"instrument", "instrument/I", 12},
    {"party", "party/P", 8},
    {"almaMater", "university/U", 35},
}};

constexpr std::size_t kFixedAttributes = 3;

Term entity_iri(std::size_t i) {
  return Term::iri(std::string(kExampleNamespace) + "entity/e" + std::to_string(i));
}

Term attribute_value(const Attribute& a, std::size_t entity, Rng& rng) {
  std::string name = a.predicate;
  if (name == "birthDate") {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04zu-%02zu-%02zu", uniform(rng, 1900, 1999),
                  uniform(rng, 1, 12), uniform(rng, 1, 28));
    return Term::literal("\"" + std::string(buf) + "\"^^<http://www.w3.org/2001/XMLSchema#date>");
  }
  if (name == "name") return Term::plain_literal("Entity " + std::to_string(entity));
  return Term::iri(std::string(kExampleNamespace) + a.value_prefix +
                   std::to_string(uniform(rng, 1, a.domain)));
}

}  // namespace

std::vector<Triple> generate_dataset(std::size_t entities, std::uint64_t seed) {
  if (entities == 0) throw std::invalid_argument("entities must be at least 1");
  Rng rng(seed);
  std::vector<Triple> out;
  auto other_entity = [&](std::size_t self) {
    std::size_t j = uniform(rng, 0, entities - 2);
    return entity_iri(j >= self ? j + 1 : j);
  };
  for (std::size_t i = 0; i < entities; ++i) {
    Term subject = entity_iri(i);
    std::vector<std::size_t> chosen;
    for (std::size_t a = 0; a < kFixedAttributes; ++a) chosen.push_back(a);
    std::vector<std::size_t> optional;
    for (std::size_t a = kFixedAttributes; a < kAttributes.size(); ++a) optional.push_back(a);
    std::shuffle(optional.begin(), optional.end(), rng);
    std::size_t extra = uniform(rng, 0, 5);
    chosen.insert(chosen.end(), optional.begin(), optional.begin() + static_cast<std::ptrdiff_t>(extra));
    std::sort(chosen.begin(), chosen.end());
    for (auto a : chosen) {
      out.push_back({subject, Term::iri(vocab(kAttributes[a].predicate)),
                     attribute_value(kAttributes[a], i, rng)});
    }
    if (entities < 2) continue;
    std::set<Triple> links;
    std::size_t knows = uniform(rng, 1, 2);
    for (std::size_t k = 0; k < knows; ++k) links.insert({subject, Term::iri(vocab("knows")), other_entity(i)});
    if (chance(rng, 0.5)) links.insert({subject, Term::iri(vocab("follows")), other_entity(i)});
    if (chance(rng, 0.3)) links.insert({subject, Term::iri(vocab("worksWith")), other_entity(i)});
    out.insert(out.end(), links.begin(), links.end());
  }
  return out;
}

void write_dataset(const std::string& path, std::size_t entities, std::uint64_t seed) {
  auto triples = generate_dataset(entities, seed);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write dataset to '" + path + "'");
  file << rdf::serialize_ntriples(triples);
  if (!file.flush()) throw std::runtime_error("cannot write dataset to '" + path + "'");
}

namespace {

struct Edge {
  Term predicate;
  Term object;
};

// Read-only view of the data used to draw query shapes.
class DataIndex {
 public:
  explicit DataIndex(std::span<const Triple> data) {
    std::set<Triple> unique(data.begin(), data.end());
    for (const auto& t : unique) subjects_.insert(t.subject);
    for (const auto& t : unique) {
      bool link = t.object.kind == rdf::TermKind::iri && subjects_.contains(t.object);
      (link ? links_ : attributes_)[t.subject].push_back({t.predicate, t.object});
      if (!link && t.object.kind == rdf::TermKind::iri) by_value_[{t.predicate, t.object}].push_back(t.subject);
    }
    for (const auto& [s, attrs] : attributes_) {
      if (attrs.size() >= 2) star_roots_.push_back(s);
    }
    for (const auto& [s, edges] : links_) path_roots_.push_back(s);
  }

  const std::vector<Edge>& attributes(const Term& s) const { return lookup(attributes_, s); }
  const std::vector<Edge>& links(const Term& s) const { return lookup(links_, s); }
  const std::vector<Term>& sharing(const Term& p, const Term& o) const {
    static const std::vector<Term> none;
    auto it = by_value_.find({p, o});
    return it == by_value_.end() ? none : it->second;
  }
  const std::vector<Term>& star_roots() const { return star_roots_; }
  const std::vector<Term>& path_roots() const { return path_roots_; }

 private:
  static const std::vector<Edge>& lookup(const std::map<Term, std::vector<Edge>>& m, const Term& s) {
    static const std::vector<Edge> none;
    auto it = m.find(s);
    return it == m.end() ? none : it->second;
  }

  std::set<Term> subjects_;
  std::map<Term, std::vector<Edge>> attributes_;
  std::map<Term, std::vector<Edge>> links_;
  std::map<std::pair<Term, Term>, std::vector<Term>> by_value_;
  std::vector<Term> star_roots_;
  std::vector<Term> path_roots_;
};

struct StarDraft {
  Term entity;
  Term root;
  std::vector<std::pair<Term, Term>> patterns;  // predicate, object (constant or variable)
  std::set<Term> used_predicates;
};

class QueryBuilder {
 public:
  QueryBuilder(const DataIndex& index, Rng& rng) : index_(index), rng_(rng) {}

  std::optional<client::BGPQuery> stars(std::size_t k) {
    if (index_.star_roots().empty()) return std::nullopt;
    std::vector<StarDraft> drafts;
    drafts.push_back(new_star(pick(rng_, index_.star_roots())));
    while (drafts.size() < k) {
      std::size_t j = uniform(rng_, 0, drafts.size() - 1);
      const Term entity = drafts[j].entity;
      const auto& links = index_.links(entity);
      bool via_link = !links.empty() && chance(rng_, 0.6);
      if (via_link) {
        const auto& edge = pick(rng_, links);
        if (index_.attributes(edge.object).size() < 2) return std::nullopt;
        auto next = new_star(edge.object);
        drafts[j].patterns.emplace_back(edge.predicate, next.root);
        drafts.push_back(std::move(next));
        continue;
      }
      std::vector<Edge> shareable;
      for (const auto& e : index_.attributes(entity)) {
        if (!drafts[j].used_predicates.contains(e.predicate) &&
            index_.sharing(e.predicate, e.object).size() >= 2) {
          shareable.push_back(e);
        }
      }
      if (shareable.empty()) return std::nullopt;
      const auto& edge = pick(rng_, shareable);
      std::vector<Term> others;
      for (const auto& s : index_.sharing(edge.predicate, edge.object)) {
        if (s != entity && index_.attributes(s).size() >= 2) others.push_back(s);
      }
      if (others.empty()) return std::nullopt;
      Term shared = fresh("j");
      auto next = new_star(pick(rng_, others));
      drafts[j].patterns.emplace_back(edge.predicate, shared);
      drafts[j].used_predicates.insert(edge.predicate);
      next.patterns.emplace_back(edge.predicate, shared);
      next.used_predicates.insert(edge.predicate);
      drafts.push_back(std::move(next));
    }

    for (std::size_t i = 0; i < drafts.size(); ++i) {
      auto& d = drafts[i];
      bool has_constant = false;
      std::vector<Edge> candidates;
      for (const auto& e : index_.attributes(d.entity)) {
        if (!d.used_predicates.contains(e.predicate)) candidates.push_back(e);
      }
      std::shuffle(candidates.begin(), candidates.end(), rng_);
      std::size_t target = std::max<std::size_t>(uniform(rng_, 2, 4), d.patterns.size() + 1);
      for (const auto& e : candidates) {
        if (d.patterns.size() >= target) break;
        bool constant = chance(rng_, 0.3) || (i == 0 && !has_constant);
        d.patterns.emplace_back(e.predicate, constant ? e.object : fresh("o"));
        d.used_predicates.insert(e.predicate);
        has_constant = has_constant || constant;
      }
      if (d.patterns.size() < 2 || (i == 0 && !has_constant)) return std::nullopt;
    }

    client::BGPQuery query;
    for (const auto& d : drafts) {
      for (const auto& [p, o] : d.patterns) query.patterns.push_back({d.root, p, o});
    }
    return finish(std::move(query));
  }

  std::optional<client::BGPQuery> path() {
    if (index_.path_roots().empty()) return std::nullopt;
    std::size_t length = uniform(rng_, 5, 9);
    std::vector<Term> nodes{pick(rng_, index_.path_roots())};
    std::vector<Term> predicates;
    while (predicates.size() < length) {
      const auto& links = index_.links(nodes.back());
      if (links.empty()) return std::nullopt;
      const auto& edge = pick(rng_, links);
      predicates.push_back(edge.predicate);
      nodes.push_back(edge.object);
    }
    bool anchor_start = chance(rng_, 0.5);
    std::vector<Term> terms;
    for (std::size_t i = 0; i <= length; ++i) {
      bool constant = anchor_start ? i == 0 : i == length;
      terms.push_back(constant ? nodes[i] : Term::variable("x" + std::to_string(i)));
    }
    client::BGPQuery query;
    for (std::size_t i = 0; i < length; ++i) query.patterns.push_back({terms[i], predicates[i], terms[i + 1]});
    return finish(std::move(query));
  }

 private:
  StarDraft new_star(const Term& entity) {
    StarDraft d{entity, fresh("v"), {}, {}};
    return d;
  }

  Term fresh(const std::string& prefix) { return Term::variable(prefix + std::to_string(counter_++)); }

  client::BGPQuery finish(client::BGPQuery query) {
    if (chance(rng_, 0.25)) {
      auto vars = query.variables();
      query.distinct = true;
      for (const auto& v : vars) {
        if (chance(rng_, 0.5)) query.projection.push_back(v);
      }
      if (query.projection.empty()) query.projection.push_back(vars.front());
    } else {
      query.wildcard = true;
    }
    return query;
  }

  const DataIndex& index_;
  Rng& rng_;
  std::size_t counter_ = 0;
};

std::string query_name(Load load, std::size_t i) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%03zu", i + 1);
  return std::string(to_string(load)) + "-" + buf;
}

}  // namespace

std::vector<GeneratedQuery> generate_queries(Load load, std::size_t count,
                                             std::span<const Triple> data, std::uint64_t seed,
                                             const QueryGenerationOptions& options) {
  Rng rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(load) + 1);
  DataIndex index(data);
  std::vector<GeneratedQuery> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < count; ++i) {
    Load shape = load == Load::mixed ? static_cast<Load>(i % 4) : load;
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < options.max_attempts_per_query && !accepted; ++attempt) {
      QueryBuilder builder(index, rng);
      std::optional<client::BGPQuery> q;
      switch (shape) {
        case Load::one_star:
          q = builder.stars(1);
          break;
        case Load::two_stars:
          q = builder.stars(2);
          break;
        case Load::three_stars:
          q = builder.stars(3);
          break;
        default:
          q = builder.path();
          break;
      }
      if (!q) continue;
      auto text = client::to_sparql(*q);
      if (seen.contains(text)) continue;
      auto rows = oracle_evaluate(data, *q);
      if (rows.empty() || rows.size() > options.max_results) continue;
      seen.insert(text);
      out.push_back({query_name(load, i), std::move(*q)});
      accepted = true;
    }
    if (!accepted) {
      throw GenerationError("could not generate a non-empty query for load '" +
                            std::string(to_string(load)) + "' after " +
                            std::to_string(options.max_attempts_per_query) + " attempts");
    }
  }
  return out;
}

std::vector<std::string> write_queries(const std::string& directory,
                                       std::span<const GeneratedQuery> queries) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) throw std::runtime_error("cannot create '" + directory + "': " + ec.message());
  std::vector<std::string> paths;
  for (const auto& q : queries) {
    auto path = (std::filesystem::path(directory) / (q.name + ".rq")).string();
    std::ofstream file(path, std::ios::binary);
    file << client::to_sparql(q.query);
    if (!file.flush()) throw std::runtime_error("cannot write '" + path + "'");
    paths.push_back(path);
  }
  return paths;
}

}  // namespace spf::bench
