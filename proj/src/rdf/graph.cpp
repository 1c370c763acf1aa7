#include "spf/rdf/graph.hpp"

#include <algorithm>

namespace spf::rdf {

namespace {

// Key position k of `order` holds spo position kKeyToSpo[order][k].
constexpr std::array<std::array<int, 3>, 3> kKeyToSpo = {{
    {0, 1, 2},  // spo
    {1, 2, 0},  // pos
    {2, 0, 1},  // osp
}};

IdTriple unpermute(const IdTriple& key, IndexOrder order) {
  const auto& map = kKeyToSpo[static_cast<int>(order)];
  IdTriple spo{};
  for (int k = 0; k < 3; ++k) spo[map[k]] = key[k];
  return spo;
}

std::size_t prefix_length(const IdPattern& pattern, IndexOrder order) {
  const auto& map = kKeyToSpo[static_cast<int>(order)];
  std::size_t n = 0;
  while (n < 3 && pattern[map[n]].has_value()) ++n;
  return n;
}

// [first, last) range of `index` whose keys start with the bound prefix.
std::pair<std::vector<IdTriple>::const_iterator, std::vector<IdTriple>::const_iterator>
prefix_range(const std::vector<IdTriple>& index, const IdPattern& pattern, IndexOrder order) {
  const auto& map = kKeyToSpo[static_cast<int>(order)];
  std::size_t n = prefix_length(pattern, order);
  IdTriple probe{};
  for (std::size_t k = 0; k < n; ++k) probe[k] = *pattern[map[k]];
  auto less_prefix = [n](const IdTriple& a, const IdTriple& b) {
    for (std::size_t k = 0; k < n; ++k) {
      if (a[k] != b[k]) return a[k] < b[k];
    }
    return false;
  };
  return std::equal_range(index.begin(), index.end(), probe, less_prefix);
}

bool matches(const IdTriple& spo, const IdPattern& pattern) {
  for (int i = 0; i < 3; ++i) {
    if (pattern[i] && *pattern[i] != spo[i]) return false;
  }
  return true;
}

}  // namespace

IndexOrder choose_index(const std::array<bool, 3>& bound) {
  IndexOrder best = IndexOrder::spo;
  std::size_t best_len = 0;
  for (IndexOrder order : {IndexOrder::spo, IndexOrder::pos, IndexOrder::osp}) {
    const auto& map = kKeyToSpo[static_cast<int>(order)];
    std::size_t n = 0;
    while (n < 3 && bound[map[n]]) ++n;
    if (n > best_len) {
      best = order;
      best_len = n;
    }
  }
  return best;
}

IdTriple permute(const IdTriple& spo, IndexOrder order) {
  const auto& map = kKeyToSpo[static_cast<int>(order)];
  return {spo[map[0]], spo[map[1]], spo[map[2]]};
}

Graph Graph::build(std::span<const Triple> triples) {
  Graph g;
  auto intern = [&g](const Term& t) {
    auto [it, inserted] = g.ids_.try_emplace(t, static_cast<TermId>(g.terms_.size()));
    if (inserted) g.terms_.push_back(t);
    return it->second;
  };
  g.spo_.reserve(triples.size());
  for (const auto& t : triples) {
    validate(t);
    g.spo_.push_back({intern(t.subject), intern(t.predicate), intern(t.object)});
  }
  std::sort(g.spo_.begin(), g.spo_.end());
  g.spo_.erase(std::unique(g.spo_.begin(), g.spo_.end()), g.spo_.end());

  g.pos_.reserve(g.spo_.size());
  g.osp_.reserve(g.spo_.size());
  for (const auto& t : g.spo_) {
    g.pos_.push_back(permute(t, IndexOrder::pos));
    g.osp_.push_back(permute(t, IndexOrder::osp));
  }
  std::sort(g.pos_.begin(), g.pos_.end());
  std::sort(g.osp_.begin(), g.osp_.end());
  return g;
}

std::optional<TermId> Graph::lookup(const Term& term) const {
  auto it = ids_.find(term);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

Triple Graph::decode(const IdTriple& t) const {
  return {terms_.at(t[0]), terms_.at(t[1]), terms_.at(t[2])};
}

std::optional<IdPattern> Graph::encode(const TriplePattern& tp) const {
  IdPattern out;
  const Term* parts[3] = {&tp.subject, &tp.predicate, &tp.object};
  for (int i = 0; i < 3; ++i) {
    if (parts[i]->is_variable()) continue;
    auto id = lookup(*parts[i]);
    if (!id) return std::nullopt;
    out[i] = *id;
  }
  return out;
}

const std::vector<IdTriple>& Graph::index(IndexOrder order) const {
  switch (order) {
    case IndexOrder::pos:
      return pos_;
    case IndexOrder::osp:
      return osp_;
    case IndexOrder::spo:
      break;
  }
  return spo_;
}

void Graph::scan(const IdPattern& pattern, IndexOrder order,
                 const std::function<void(const IdTriple&)>& visit) const {
  auto [first, last] = prefix_range(index(order), pattern, order);
  for (auto it = first; it != last; ++it) {
    IdTriple spo = unpermute(*it, order);
    if (matches(spo, pattern)) visit(spo);
  }
}

void Graph::scan(const IdPattern& pattern,
                 const std::function<void(const IdTriple&)>& visit) const {
  scan(pattern, choose_index({pattern[0].has_value(), pattern[1].has_value(),
                              pattern[2].has_value()}),
       visit);
}

std::size_t Graph::estimate(const IdPattern& pattern) const {
  IndexOrder order =
      choose_index({pattern[0].has_value(), pattern[1].has_value(), pattern[2].has_value()});
  auto [first, last] = prefix_range(index(order), pattern, order);
  return static_cast<std::size_t>(last - first);
}

MatchResult Graph::match_pattern(const TriplePattern& tp) const {
  return match_pattern(tp, choose_index({tp.subject.is_constant(), tp.predicate.is_constant(),
                                         tp.object.is_constant()}));
}

MatchResult Graph::match_pattern(const TriplePattern& tp, IndexOrder order) const {
  validate(tp);
  MatchResult result;
  auto encoded = encode(tp);
  if (!encoded) return result;
  const Term* parts[3] = {&tp.subject, &tp.predicate, &tp.object};
  scan(*encoded, order, [&](const IdTriple& t) {
    SolutionMapping mu;
    for (int i = 0; i < 3; ++i) {
      if (!parts[i]->is_variable()) continue;
      const Term& value = terms_[t[i]];
      if (const Term* prior = mu.find(parts[i]->lexical)) {
        if (*prior != value) return;  // repeated variable bound inconsistently
      } else {
        mu.bind(parts[i]->lexical, value);
      }
    }
    result.mappings.push_back(std::move(mu));
  });
  result.count = result.mappings.size();
  return result;
}

std::vector<Triple> Graph::triples() const {
  std::vector<Triple> out;
  out.reserve(spo_.size());
  for (const auto& t : spo_) out.push_back(decode(t));
  return out;
}

}  // namespace spf::rdf
