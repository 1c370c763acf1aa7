#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spf/rdf/graph.hpp"
#include "spf/rdf/mapping.hpp"
#include "spf/rdf/triple.hpp"

namespace spf::fragments {

inline constexpr std::size_t kDefaultMaxOmega = 30;
inline constexpr std::size_t kDefaultPageSize = 50;

using Omega = std::vector<rdf::SolutionMapping>;

enum class SelectorKind : unsigned char { tp, brtp, star };

const char* to_string(SelectorKind kind);

class InvalidSelector : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Triple pattern (TPF), bindings-restricted triple pattern (brTPF) or star
/// pattern (SPF) selector. The tp and brtp variants hold a singleton star.
class SelectorSpec {
 public:
  static SelectorSpec tp(rdf::TriplePattern pattern);
  static SelectorSpec brtp(rdf::TriplePattern pattern, Omega omega);
  static SelectorSpec star(rdf::StarPattern pattern, Omega omega);

  SelectorKind kind() const noexcept { return kind_; }
  const rdf::StarPattern& star() const noexcept { return star_; }
  /// The single pattern of a tp or brtp selector.
  const rdf::TriplePattern& pattern() const { return star_.patterns().front(); }
  const Omega& omega() const noexcept { return omega_; }

  /// Throws InvalidSelector when Omega has repeated entries, exceeds
  /// `max_omega`, or the star exceeds `max_star_size` patterns.
  void validate(std::size_t max_omega, std::size_t max_star_size) const;

  friend bool operator==(const SelectorSpec&, const SelectorSpec&) = default;

 private:
  SelectorSpec(SelectorKind kind, rdf::StarPattern star, Omega omega)
      : kind_(kind), star_(std::move(star)), omega_(std::move(omega)) {}

  SelectorKind kind_;
  rdf::StarPattern star_;
  Omega omega_;
};

/// One element of a selector result: the ground triples mu[sp] together with
/// the mapping mu that produced them.
struct TripleGroup {
  std::vector<rdf::Triple> triples;
  rdf::SolutionMapping mapping;

  friend bool operator==(const TripleGroup&, const TripleGroup&) = default;
};

/// Star pattern selector. With an empty Omega every solution of `sp` over
/// `g` yields one group; otherwise only solutions extending at least one
/// element of Omega (strict extension: an element binding a variable that
/// `sp` lacks selects nothing).
///
/// Groups are ordered as a nested loop over the patterns of `sp` in their
/// given order would produce them, each level scanning the index chosen from
/// its bound positions. A restricted result is therefore an ordered
/// subsequence of the unrestricted one.
std::vector<TripleGroup> select_star(const rdf::Graph& g, const rdf::StarPattern& sp,
                                     const Omega& omega);

/// TPF selector when Omega is empty, brTPF selector otherwise; identical to
/// select_star over the singleton star.
std::vector<TripleGroup> select_triple_pattern(const rdf::Graph& g,
                                               const rdf::TriplePattern& tp,
                                               const Omega& omega);

std::vector<TripleGroup> select(const rdf::Graph& g, const SelectorSpec& selector);

/// Number of groups `select` would return plus the materialized groups in
/// [offset, offset + limit).
struct SelectionSlice {
  std::size_t total = 0;
  std::vector<TripleGroup> groups;
};
SelectionSlice select_slice(const rdf::Graph& g, const SelectorSpec& selector,
                            std::size_t offset, std::size_t limit);

}  // namespace spf::fragments
