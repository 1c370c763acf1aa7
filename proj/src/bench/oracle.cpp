#include "spf/bench/oracle.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <unordered_map>

namespace spf::bench {

namespace {

using Id = std::uint32_t;

// A position is either a constant id or a slot for a variable.
struct Slot {
  bool variable = false;
  Id value = 0;
};

class Evaluator {
 public:
  Evaluator(std::span<const rdf::Triple> triples, const client::BGPQuery& query) {
    std::set<std::array<Id, 3>> unique;
    for (const auto& t : triples) unique.insert({intern(t.subject), intern(t.predicate), intern(t.object)});
    triples_.assign(unique.begin(), unique.end());

    // Patterns are visited most-constant first, preferring ones that touch
    // a variable seen before; this keeps intermediate results small.
    std::vector<bool> placed(query.patterns.size(), false);
    std::set<std::string> seen;
    for (std::size_t step = 0; step < query.patterns.size(); ++step) {
      std::size_t pick = query.patterns.size();
      int best = -1;
      for (std::size_t i = 0; i < query.patterns.size(); ++i) {
        if (placed[i]) continue;
        const auto& tp = query.patterns[i];
        auto vars = tp.variables();
        bool connected = std::any_of(vars.begin(), vars.end(),
                                     [&](const std::string& v) { return seen.contains(v); });
        int score = (connected ? 4 : 0) + 3 - static_cast<int>(vars.size());
        if (score > best) {
          best = score;
          pick = i;
        }
      }
      placed[pick] = true;
      for (const auto& v : query.patterns[pick].variables()) seen.insert(v);
      order_.push_back(encode(query.patterns[pick]));
    }
    values_.assign(var_names_.size(), std::nullopt);
  }

  std::vector<rdf::SolutionMapping> run() {
    std::vector<rdf::SolutionMapping> out;
    if (!missing_constant_) search(0, out);
    return out;
  }

 private:
  Id intern(const rdf::Term& term) {
    auto [it, inserted] = ids_.emplace(term, static_cast<Id>(terms_.size()));
    if (inserted) terms_.push_back(term);
    return it->second;
  }

  std::array<Slot, 3> encode(const rdf::TriplePattern& tp) {
    std::array<Slot, 3> slots;
    const rdf::Term* parts[3] = {&tp.subject, &tp.predicate, &tp.object};
    for (int i = 0; i < 3; ++i) {
      if (parts[i]->kind == rdf::TermKind::variable) {
        auto [it, inserted] = var_ids_.emplace(parts[i]->lexical, static_cast<Id>(var_names_.size()));
        if (inserted) var_names_.push_back(parts[i]->lexical);
        slots[i] = {true, it->second};
      } else {
        auto it = ids_.find(*parts[i]);
        if (it == ids_.end()) missing_constant_ = true;
        slots[i] = {false, it == ids_.end() ? 0 : it->second};
      }
    }
    return slots;
  }

  void search(std::size_t depth, std::vector<rdf::SolutionMapping>& out) {
    if (depth == order_.size()) {
      rdf::SolutionMapping mu;
      for (std::size_t v = 0; v < var_names_.size(); ++v) mu.bind(var_names_[v], terms_[*values_[v]]);
      out.push_back(std::move(mu));
      return;
    }
    const auto& slots = order_[depth];
    for (const auto& t : triples_) {
      std::array<Id, 3> newly{};
      std::size_t newly_count = 0;
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) {
        if (!slots[i].variable) {
          ok = t[i] == slots[i].value;
        } else if (auto& bound = values_[slots[i].value]) {
          ok = *bound == t[i];
        } else {
          bound = t[i];
          newly[newly_count++] = slots[i].value;
        }
      }
      if (ok) search(depth + 1, out);
      for (std::size_t k = 0; k < newly_count; ++k) values_[newly[k]].reset();
    }
  }

  std::vector<rdf::Term> terms_;
  std::unordered_map<rdf::Term, Id> ids_;
  std::vector<std::array<Id, 3>> triples_;
  std::vector<std::string> var_names_;
  std::unordered_map<std::string, Id> var_ids_;
  std::vector<std::array<Slot, 3>> order_;
  std::vector<std::optional<Id>> values_;
  bool missing_constant_ = false;
};

}  // namespace

std::vector<rdf::SolutionMapping> oracle_evaluate(std::span<const rdf::Triple> triples,
                                                  const client::BGPQuery& query) {
  auto full = Evaluator(triples, query).run();
  auto vars = query.result_variables();
  std::vector<rdf::SolutionMapping> rows;
  rows.reserve(full.size());
  for (const auto& mu : full) rows.push_back(mu.restricted_to(vars));
  rows = sorted_rows(std::move(rows));
  if (query.distinct) rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  return rows;
}

std::vector<rdf::SolutionMapping> sorted_rows(std::vector<rdf::SolutionMapping> rows) {
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace spf::bench
