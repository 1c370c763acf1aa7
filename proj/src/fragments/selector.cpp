#include "spf/fragments/selector.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace spf::fragments {

using rdf::IdPattern;
using rdf::IdTriple;
using rdf::IndexOrder;
using rdf::TermId;

const char* to_string(SelectorKind kind) {
  switch (kind) {
    case SelectorKind::tp:
      return "tp";
    case SelectorKind::brtp:
      return "brtp";
    case SelectorKind::star:
      return "star";
  }
  return "?";
}

SelectorSpec SelectorSpec::tp(rdf::TriplePattern pattern) {
  return SelectorSpec(SelectorKind::tp, rdf::StarPattern({std::move(pattern)}), {});
}

SelectorSpec SelectorSpec::brtp(rdf::TriplePattern pattern, Omega omega) {
  return SelectorSpec(SelectorKind::brtp, rdf::StarPattern({std::move(pattern)}),
                      std::move(omega));
}

SelectorSpec SelectorSpec::star(rdf::StarPattern pattern, Omega omega) {
  return SelectorSpec(SelectorKind::star, std::move(pattern), std::move(omega));
}

void SelectorSpec::validate(std::size_t max_omega, std::size_t max_star_size) const {
  if (omega_.size() > max_omega) {
    throw InvalidSelector("bindings exceed maxOmega=" + std::to_string(max_omega) + " (got " +
                          std::to_string(omega_.size()) + ")");
  }
  if (star_.size() > max_star_size) {
    throw InvalidSelector("star exceeds maxStarSize=" + std::to_string(max_star_size) +
                          " (got " + std::to_string(star_.size()) + ")");
  }
  std::set<rdf::SolutionMapping> seen;
  for (const auto& mu : omega_) {
    if (!seen.insert(mu).second) {
      throw InvalidSelector("duplicate binding " + rdf::to_string(mu));
    }
  }
}

namespace {

// A pattern position is either a constant id or a variable slot.
struct Slot {
  bool is_var = false;
  TermId id = 0;  // constant id, or variable slot index
};
using SlotPattern = std::array<Slot, 3>;

class StarEvaluator {
 public:
  StarEvaluator(const rdf::Graph& g, const rdf::StarPattern& sp) : g_(g) {
    variables_ = sp.variables();
    for (const auto& tp : sp.patterns()) {
      SlotPattern slots;
      const rdf::Term* parts[3] = {&tp.subject, &tp.predicate, &tp.object};
      for (int i = 0; i < 3; ++i) {
        if (parts[i]->is_variable()) {
          auto it = std::find(variables_.begin(), variables_.end(), parts[i]->lexical);
          slots[i] = {true, static_cast<TermId>(it - variables_.begin())};
        } else if (auto id = g.lookup(*parts[i])) {
          slots[i] = {false, *id};
        } else {
          satisfiable_ = false;
        }
      }
      patterns_.push_back(slots);
    }
    // Canonical index per pattern: positions are bound when constant or
    // holding a variable that an earlier pattern already binds.
    std::vector<bool> seen(variables_.size(), false);
    for (const auto& slots : patterns_) {
      std::array<bool, 3> bound{};
      for (int i = 0; i < 3; ++i) bound[i] = !slots[i].is_var || seen[slots[i].id];
      canonical_order_.push_back(rdf::choose_index(bound));
      for (const auto& s : slots) {
        if (s.is_var) seen[s.id] = true;
      }
    }
  }

  // Evaluates the star for one restricting mapping (possibly empty) and adds
  // every solution to `out`, keyed by canonical position.
  void evaluate(const rdf::SolutionMapping& restriction,
                std::map<std::vector<TermId>, std::vector<TermId>>& out) const {
    if (!satisfiable_) return;
    std::vector<std::optional<TermId>> binding(variables_.size());
    for (const auto& [var, value] : restriction.bindings()) {
      auto it = std::find(variables_.begin(), variables_.end(), var);
      if (it == variables_.end()) return;  // cannot be extended by any solution
      auto id = g_.lookup(value);
      if (!id) return;
      binding[it - variables_.begin()] = *id;
    }

    // Most selective pattern first given the restriction.
    std::vector<std::size_t> order(patterns_.size());
    std::vector<std::size_t> sizes(patterns_.size());
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      order[i] = i;
      sizes[i] = g_.estimate(bind(patterns_[i], binding));
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return sizes[a] < sizes[b]; });
    descend(order, 0, binding, out);
  }

  const std::vector<std::string>& variables() const { return variables_; }

 private:
  IdPattern bind(const SlotPattern& slots, const std::vector<std::optional<TermId>>& binding) const {
    IdPattern p;
    for (int i = 0; i < 3; ++i) p[i] = slots[i].is_var ? binding[slots[i].id] : slots[i].id;
    return p;
  }

  void descend(const std::vector<std::size_t>& order, std::size_t depth,
               std::vector<std::optional<TermId>>& binding,
               std::map<std::vector<TermId>, std::vector<TermId>>& out) const {
    if (depth == order.size()) {
      record(binding, out);
      return;
    }
    const SlotPattern& slots = patterns_[order[depth]];
    g_.scan(bind(slots, binding), [&](const IdTriple& t) {
      std::array<TermId, 3> newly{};
      int n = 0;
      bool ok = true;
      for (int i = 0; i < 3 && ok; ++i) {
        if (!slots[i].is_var) continue;
        auto& b = binding[slots[i].id];
        if (b) {
          ok = *b == t[i];
        } else {
          b = t[i];
          newly[n++] = slots[i].id;
        }
      }
      if (ok) descend(order, depth + 1, binding, out);
      for (int k = 0; k < n; ++k) binding[newly[k]].reset();
    });
  }

  void record(const std::vector<std::optional<TermId>>& binding,
              std::map<std::vector<TermId>, std::vector<TermId>>& out) const {
    std::vector<TermId> values(binding.size());
    for (std::size_t i = 0; i < binding.size(); ++i) values[i] = *binding[i];
    std::vector<TermId> key;
    key.reserve(3 * patterns_.size());
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
      IdTriple ground;
      for (int k = 0; k < 3; ++k) {
        ground[k] = patterns_[i][k].is_var ? values[patterns_[i][k].id] : patterns_[i][k].id;
      }
      auto permuted = rdf::permute(ground, canonical_order_[i]);
      key.insert(key.end(), permuted.begin(), permuted.end());
    }
    out.emplace(std::move(key), std::move(values));
  }

  const rdf::Graph& g_;
  std::vector<std::string> variables_;
  std::vector<SlotPattern> patterns_;
  std::vector<IndexOrder> canonical_order_;
  bool satisfiable_ = true;
};

TripleGroup materialize(const rdf::Graph& g, const rdf::StarPattern& sp,
                        const std::vector<std::string>& variables,
                        const std::vector<TermId>& values) {
  TripleGroup group;
  for (std::size_t i = 0; i < variables.size(); ++i) {
    group.mapping.bind(variables[i], g.term(values[i]));
  }
  auto ground = rdf::apply_mapping(group.mapping, sp);
  for (const auto& tp : ground.patterns()) {
    group.triples.push_back(rdf::as_triple(tp));
  }
  return group;
}

std::map<std::vector<TermId>, std::vector<TermId>> evaluate_all(const StarEvaluator& eval,
                                                                const Omega& omega) {
  std::map<std::vector<TermId>, std::vector<TermId>> solutions;
  if (omega.empty()) {
    eval.evaluate(rdf::SolutionMapping{}, solutions);
  } else {
    for (const auto& restriction : omega) eval.evaluate(restriction, solutions);
  }
  return solutions;
}

}  // namespace

std::vector<TripleGroup> select_star(const rdf::Graph& g, const rdf::StarPattern& sp,
                                     const Omega& omega) {
  StarEvaluator eval(g, sp);
  auto solutions = evaluate_all(eval, omega);
  std::vector<TripleGroup> out;
  out.reserve(solutions.size());
  for (const auto& [key, values] : solutions) {
    out.push_back(materialize(g, sp, eval.variables(), values));
  }
  return out;
}

std::vector<TripleGroup> select_triple_pattern(const rdf::Graph& g, const rdf::TriplePattern& tp,
                                               const Omega& omega) {
  return select_star(g, rdf::StarPattern({tp}), omega);
}

std::vector<TripleGroup> select(const rdf::Graph& g, const SelectorSpec& selector) {
  return select_star(g, selector.star(), selector.omega());
}

SelectionSlice select_slice(const rdf::Graph& g, const SelectorSpec& selector,
                            std::size_t offset, std::size_t limit) {
  StarEvaluator eval(g, selector.star());
  auto solutions = evaluate_all(eval, selector.omega());
  SelectionSlice slice;
  slice.total = solutions.size();
  if (offset >= solutions.size()) return slice;
  auto it = std::next(solutions.begin(), static_cast<std::ptrdiff_t>(offset));
  for (std::size_t n = 0; n < limit && it != solutions.end(); ++n, ++it) {
    slice.groups.push_back(materialize(g, selector.star(), eval.variables(), it->second));
  }
  return slice;
}

}  // namespace spf::fragments
