#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spf::rdf {

enum class TermKind : unsigned char { iri, literal, blank, variable };

/// An RDF term or a query variable.
///
/// The lexical form is stored without syntactic decoration for IRIs (no angle
/// brackets), blank nodes (no `_:`) and variables (no `?`). Literals keep
/// their complete quoted token including any `@lang` or `^^<datatype>`
/// suffix, so two literals are equal exactly when their tokens are equal.
struct Term {
  TermKind kind = TermKind::iri;
  std::string lexical;

  static Term iri(std::string value);
  static Term literal(std::string quoted_token);
  /// Convenience for a plain literal: wraps `value` in double quotes and
  /// escapes quotes and backslashes.
  static Term plain_literal(std::string_view value);
  static Term blank(std::string label);
  static Term variable(std::string name);

  bool is_variable() const noexcept { return kind == TermKind::variable; }
  bool is_constant() const noexcept { return kind != TermKind::variable; }

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// Thrown when a term, triple or pattern violates its kind constraints.
class InvalidTerm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tagged textual form: `<iri>`, `"literal"...`, `_:blank`, `?var`.
std::string to_string(const Term& term);

/// Inverse of to_string. Throws InvalidTerm on malformed input.
Term parse_term(std::string_view tagged);

}  // namespace spf::rdf

template <>
struct std::hash<spf::rdf::Term> {
  std::size_t operator()(const spf::rdf::Term& t) const noexcept {
    return std::hash<std::string>{}(t.lexical) * 31 +
           static_cast<std::size_t>(t.kind);
  }
};
