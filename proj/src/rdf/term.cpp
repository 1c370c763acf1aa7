#include "spf/rdf/term.hpp"

#include <algorithm>
#include <cctype>

namespace spf::rdf {

namespace {

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

// A quoted literal token: "..." with escapes, then optional @lang or ^^<iri>.
bool is_literal_token(std::string_view s) {
  if (s.size() < 2 || s.front() != '"') return false;
  std::size_t i = 1;
  for (; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
      continue;
    }
    if (s[i] == '"') break;
  }
  if (i >= s.size()) return false;
  std::string_view rest = s.substr(i + 1);
  if (rest.empty()) return true;
  if (rest.front() == '@') return rest.size() > 1 && !has_whitespace(rest);
  if (rest.starts_with("^^<") && rest.back() == '>') {
    return rest.size() > 4 && !has_whitespace(rest);
  }
  return false;
}

}  // namespace

Term Term::iri(std::string value) {
  if (value.empty() || has_whitespace(value)) {
    throw InvalidTerm("invalid IRI '" + value + "'");
  }
  return Term{TermKind::iri, std::move(value)};
}

Term Term::literal(std::string quoted_token) {
  if (!is_literal_token(quoted_token)) {
    throw InvalidTerm("invalid literal token " + quoted_token);
  }
  return Term{TermKind::literal, std::move(quoted_token)};
}

Term Term::plain_literal(std::string_view value) {
  std::string token = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') token.push_back('\\');
    token.push_back(c);
  }
  token.push_back('"');
  return Term{TermKind::literal, std::move(token)};
}

Term Term::blank(std::string label) {
  if (label.empty() || has_whitespace(label)) {
    throw InvalidTerm("invalid blank node label '" + label + "'");
  }
  return Term{TermKind::blank, std::move(label)};
}

Term Term::variable(std::string name) {
  if (name.empty() || has_whitespace(name)) {
    throw InvalidTerm("invalid variable name '" + name + "'");
  }
  return Term{TermKind::variable, std::move(name)};
}

std::string to_string(const Term& term) {
  switch (term.kind) {
    case TermKind::iri:
      return "<" + term.lexical + ">";
    case TermKind::literal:
      return term.lexical;
    case TermKind::blank:
      return "_:" + term.lexical;
    case TermKind::variable:
      return "?" + term.lexical;
  }
  return term.lexical;
}

Term parse_term(std::string_view tagged) {
  if (tagged.empty()) throw InvalidTerm("empty term");
  switch (tagged.front()) {
    case '<':
      if (tagged.size() < 3 || tagged.back() != '>') break;
      return Term::iri(std::string(tagged.substr(1, tagged.size() - 2)));
    case '"':
      return Term::literal(std::string(tagged));
    case '_':
      if (!tagged.starts_with("_:")) break;
      return Term::blank(std::string(tagged.substr(2)));
    case '?':
      return Term::variable(std::string(tagged.substr(1)));
    default:
      break;
  }
  throw InvalidTerm("malformed term '" + std::string(tagged) + "'");
}

}  // namespace spf::rdf
