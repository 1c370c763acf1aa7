#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "spf/rdf/mapping.hpp"
#include "spf/rdf/triple.hpp"

namespace spf::rdf {

using TermId = std::uint32_t;
using IdTriple = std::array<TermId, 3>;  // subject, predicate, object

/// Sort orders of the three permutation indexes.
enum class IndexOrder : unsigned char { spo, pos, osp };

/// Positions of a triple bound to a constant id; nullopt means "any".
using IdPattern = std::array<std::optional<TermId>, 3>;

/// Picks the permutation whose key order has the longest prefix of bound
/// positions. Ties prefer spo, then pos, then osp.
IndexOrder choose_index(const std::array<bool, 3>& bound);

/// Permutes an spo triple into the key order of `order`.
IdTriple permute(const IdTriple& spo, IndexOrder order);

struct MatchResult {
  std::vector<SolutionMapping> mappings;
  std::size_t count = 0;
};

/// Immutable dictionary-encoded triple set with SPO, POS and OSP indexes.
///
/// Ids are assigned in order of first appearance while building, so the
/// index order (and therefore every result order derived from it) only
/// depends on the input triple sequence.
class Graph {
 public:
  Graph() = default;

  /// Deduplicates and indexes `triples`. Throws InvalidTerm naming the
  /// first triple that violates the kind constraints.
  static Graph build(std::span<const Triple> triples);

  std::size_t size() const noexcept { return spo_.size(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  std::optional<TermId> lookup(const Term& term) const;
  const Term& term(TermId id) const { return terms_.at(id); }
  Triple decode(const IdTriple& t) const;

  /// Encodes constant positions; variables become nullopt. Returns nullopt
  /// when some constant is not in the dictionary (no triple can match).
  std::optional<IdPattern> encode(const TriplePattern& tp) const;

  /// Visits every stored triple (in spo form) matching `pattern`, in the key
  /// order of `order`. Bound positions outside the usable prefix of `order`
  /// are filtered after the range lookup.
  void scan(const IdPattern& pattern, IndexOrder order,
            const std::function<void(const IdTriple&)>& visit) const;
  void scan(const IdPattern& pattern,
            const std::function<void(const IdTriple&)>& visit) const;

  /// Size of the index range that serves `pattern`: an upper bound on the
  /// number of matches and exact unless a variable repeats in the pattern.
  std::size_t estimate(const IdPattern& pattern) const;

  /// Mappings for every triple matching `tp`, in the order of the index
  /// chosen from the bound positions.
  MatchResult match_pattern(const TriplePattern& tp) const;
  /// Same, with the serving index forced.
  MatchResult match_pattern(const TriplePattern& tp, IndexOrder order) const;

  /// All triples in spo index order.
  std::vector<Triple> triples() const;
  const std::vector<IdTriple>& index(IndexOrder order) const;

 private:
  std::vector<Term> terms_;
  std::unordered_map<Term, TermId> ids_;
  std::vector<IdTriple> spo_;  // keys (s, p, o)
  std::vector<IdTriple> pos_;  // keys (p, o, s)
  std::vector<IdTriple> osp_;  // keys (o, s, p)
};

}  // namespace spf::rdf
