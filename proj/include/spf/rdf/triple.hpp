#pragma once

#include <set>
#include <string>
#include <vector>

#include "spf/rdf/term.hpp"

namespace spf::rdf {

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;

  /// Variable names in subject, predicate, object order, without repeats.
  std::vector<std::string> variables() const;
  bool is_ground() const;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
  friend auto operator<=>(const TriplePattern&, const TriplePattern&) = default;
};

/// Throws InvalidTerm unless s is an IRI/blank, p an IRI and o a non-variable.
void validate(const Triple& t);
/// Throws InvalidTerm unless the pattern positions carry permitted kinds.
void validate(const TriplePattern& tp);

TriplePattern as_pattern(const Triple& t);
/// Converts a pattern without variables into a triple. Throws InvalidTerm
/// when a variable remains.
Triple as_triple(const TriplePattern& tp);

/// A non-empty list of distinct triple patterns sharing one subject.
class StarPattern {
 public:
  /// Throws InvalidTerm if `patterns` is empty, has duplicates or mixed
  /// subjects.
  explicit StarPattern(std::vector<TriplePattern> patterns);

  const Term& root() const noexcept { return patterns_.front().subject; }
  const std::vector<TriplePattern>& patterns() const noexcept { return patterns_; }
  std::size_t size() const noexcept { return patterns_.size(); }

  /// Variable names in order of first occurrence.
  std::vector<std::string> variables() const;
  bool has_variable(const std::string& name) const;

  friend bool operator==(const StarPattern&, const StarPattern&) = default;

 private:
  std::vector<TriplePattern> patterns_;
};

std::string to_string(const TriplePattern& tp);

}  // namespace spf::rdf
