#include "spf/rdf/mapping.hpp"

#include <algorithm>

namespace spf::rdf {

SolutionMapping::SolutionMapping(Bindings bindings) : bindings_(std::move(bindings)) {
  for (const auto& [var, value] : bindings_) {
    if (value.is_variable()) {
      throw InvalidTerm("variable ?" + var + " bound to variable " + to_string(value));
    }
  }
}

void SolutionMapping::bind(std::string variable, Term value) {
  if (value.is_variable()) {
    throw InvalidTerm("variable ?" + variable + " bound to variable " + to_string(value));
  }
  bindings_.insert_or_assign(std::move(variable), std::move(value));
}

const Term* SolutionMapping::find(const std::string& variable) const {
  auto it = bindings_.find(variable);
  return it == bindings_.end() ? nullptr : &it->second;
}

bool SolutionMapping::is_subset_of(const SolutionMapping& other) const {
  if (bindings_.size() > other.bindings_.size()) return false;
  for (const auto& [var, value] : bindings_) {
    const Term* t = other.find(var);
    if (t == nullptr || *t != value) return false;
  }
  return true;
}

bool SolutionMapping::compatible_with(const SolutionMapping& other) const {
  const auto& small = bindings_.size() <= other.bindings_.size() ? *this : other;
  const auto& large = &small == this ? other : *this;
  for (const auto& [var, value] : small.bindings_) {
    const Term* t = large.find(var);
    if (t != nullptr && *t != value) return false;
  }
  return true;
}

SolutionMapping SolutionMapping::merged_with(const SolutionMapping& other) const {
  SolutionMapping out = *this;
  for (const auto& [var, value] : other.bindings_) out.bindings_.insert_or_assign(var, value);
  return out;
}

SolutionMapping SolutionMapping::restricted_to(std::span<const std::string> variables) const {
  SolutionMapping out;
  for (const auto& v : variables) {
    if (const Term* t = find(v)) out.bindings_.emplace(v, *t);
  }
  return out;
}

std::string to_string(const SolutionMapping& mu) {
  std::string out = "{";
  bool first = true;
  for (const auto& [var, value] : mu.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += "?" + var + "->" + to_string(value);
  }
  return out + "}";
}

Term apply_mapping(const SolutionMapping& mu, const Term& term) {
  if (term.is_variable()) {
    if (const Term* t = mu.find(term.lexical)) return *t;
  }
  return term;
}

TriplePattern apply_mapping(const SolutionMapping& mu, const TriplePattern& tp) {
  return {apply_mapping(mu, tp.subject), apply_mapping(mu, tp.predicate),
          apply_mapping(mu, tp.object)};
}

StarPattern apply_mapping(const SolutionMapping& mu, const StarPattern& sp) {
  std::vector<TriplePattern> out;
  out.reserve(sp.size());
  for (const auto& tp : sp.patterns()) {
    auto substituted = apply_mapping(mu, tp);
    if (std::find(out.begin(), out.end(), substituted) == out.end()) {
      out.push_back(std::move(substituted));
    }
  }
  return StarPattern(std::move(out));
}

}  // namespace spf::rdf
