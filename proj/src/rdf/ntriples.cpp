#include "spf/rdf/ntriples.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace spf::rdf {

namespace {

void skip_space(std::string_view text, std::size_t& pos) {
  while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
}

bool is_label_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' || c == '.';
}

std::string read_iri(std::string_view text, std::size_t& pos) {
  std::size_t end = text.find('>', pos + 1);
  if (end == std::string_view::npos) throw std::invalid_argument("unterminated IRI");
  std::string value(text.substr(pos + 1, end - pos - 1));
  pos = end + 1;
  return value;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Term read_term_token(std::string_view text, std::size_t& pos) {
  if (pos >= text.size()) throw std::invalid_argument("expected a term");
  char c = text[pos];
  if (c == '<') return Term::iri(read_iri(text, pos));
  if (c == '_') {
    if (pos + 1 >= text.size() || text[pos + 1] != ':') {
      throw std::invalid_argument("malformed blank node");
    }
    std::size_t start = pos + 2;
    std::size_t end = start;
    while (end < text.size() && is_label_char(text[end])) ++end;
    // A trailing '.' terminates the statement rather than the label.
    while (end > start && text[end - 1] == '.') --end;
    pos = end;
    return Term::blank(std::string(text.substr(start, end - start)));
  }
  if (c == '"') {
    std::size_t i = pos + 1;
    for (; i < text.size(); ++i) {
      if (text[i] == '\\') {
        ++i;
        continue;
      }
      if (text[i] == '"') break;
    }
    if (i >= text.size()) throw std::invalid_argument("unterminated literal");
    std::size_t end = i + 1;
    if (end < text.size() && text[end] == '@') {
      ++end;
      while (end < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[end])) != 0 || text[end] == '-')) {
        ++end;
      }
    } else if (text.substr(end).starts_with("^^<")) {
      std::size_t close = text.find('>', end + 3);
      if (close == std::string_view::npos) throw std::invalid_argument("unterminated datatype");
      end = close + 1;
    }
    std::string token(text.substr(pos, end - pos));
    pos = end;
    return Term::literal(std::move(token));
  }
  throw std::invalid_argument(std::string("unexpected character '") + c + "'");
}

std::vector<Triple> parse_ntriples(std::istream& in) {
  std::vector<Triple> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    std::size_t pos = 0;
    skip_space(text, pos);
    if (pos == text.size() || text[pos] == '#') continue;
    try {
      Triple t;
      t.subject = read_term_token(text, pos);
      skip_space(text, pos);
      t.predicate = read_term_token(text, pos);
      skip_space(text, pos);
      t.object = read_term_token(text, pos);
      skip_space(text, pos);
      if (pos >= text.size() || text[pos] != '.') throw std::invalid_argument("expected '.'");
      ++pos;
      skip_space(text, pos);
      if (pos < text.size() && text[pos] != '#') {
        throw std::invalid_argument("trailing content after '.'");
      }
      validate(t);
      out.push_back(std::move(t));
    } catch (const std::invalid_argument& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

std::vector<Triple> parse_ntriples(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_ntriples(in);
}

std::vector<Triple> load_ntriples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_ntriples(in);
}

std::string serialize_ntriples(std::span<const Triple> triples) {
  std::string out;
  for (const auto& t : triples) {
    out += to_string(t.subject);
    out += ' ';
    out += to_string(t.predicate);
    out += ' ';
    out += to_string(t.object);
    out += " .\n";
  }
  return out;
}

}  // namespace spf::rdf
