#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spf/rdf/term.hpp"
#include "spf/rdf/triple.hpp"

namespace spf::rdf {

/// A partial function from variable names to constant terms.
class SolutionMapping {
 public:
  using Bindings = std::map<std::string, Term>;

  SolutionMapping() = default;
  /// Throws InvalidTerm if a binding maps to a variable.
  explicit SolutionMapping(Bindings bindings);

  /// Adds or replaces a binding. Throws InvalidTerm for variable values.
  void bind(std::string variable, Term value);
  const Term* find(const std::string& variable) const;
  bool binds(const std::string& variable) const { return bindings_.contains(variable); }

  const Bindings& bindings() const noexcept { return bindings_; }
  std::size_t size() const noexcept { return bindings_.size(); }
  bool empty() const noexcept { return bindings_.empty(); }

  /// True when every binding of *this appears identically in `other`.
  bool is_subset_of(const SolutionMapping& other) const;
  /// True when the two mappings agree on all shared variables.
  bool compatible_with(const SolutionMapping& other) const;
  /// Union of compatible mappings. Bindings of `other` win on conflict, so
  /// callers check compatibility first.
  SolutionMapping merged_with(const SolutionMapping& other) const;
  /// Restriction to the given variables.
  SolutionMapping restricted_to(std::span<const std::string> variables) const;

  friend bool operator==(const SolutionMapping&, const SolutionMapping&) = default;
  friend auto operator<=>(const SolutionMapping&, const SolutionMapping&) = default;

 private:
  Bindings bindings_;
};

std::string to_string(const SolutionMapping& mu);

Term apply_mapping(const SolutionMapping& mu, const Term& term);
TriplePattern apply_mapping(const SolutionMapping& mu, const TriplePattern& tp);
/// Replaces every bound variable; unbound variables and pattern order are
/// kept. Patterns that collapse onto an earlier one after substitution are
/// dropped, since a star never holds the same pattern twice.
StarPattern apply_mapping(const SolutionMapping& mu, const StarPattern& sp);

}  // namespace spf::rdf
