#include "spf/client/sparql.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace spf::client {

using rdf::Term;
using rdf::TriplePattern;

std::vector<std::string> BGPQuery::variables() const {
  std::vector<std::string> out;
  for (const auto& tp : patterns) {
    for (auto& v : tp.variables()) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<std::string> BGPQuery::result_variables() const {
  return wildcard ? variables() : projection;
}

namespace {

constexpr const char* kXsd = "http://www.w3.org/2001/XMLSchema#";
constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

const std::set<std::string> kUnsupported = {
    "OPTIONAL", "UNION",  "FILTER",    "MINUS", "BIND",   "VALUES",  "GRAPH",
    "SERVICE",  "LIMIT",  "OFFSET",    "ORDER", "GROUP",  "HAVING",  "CONSTRUCT",
    "ASK",      "DESCRIBE", "BASE",    "FROM",  "REDUCED", "NOT",    "EXISTS"};

enum class Tok { word, iri, pname, var, literal, number, punct, blank, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
};

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' || c == '.' ||
         (static_cast<unsigned char>(c) >= 0x80);
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip();
    if (pos_ >= text_.size()) return {Tok::end, ""};
    char c = text_[pos_];
    if (c == '<') {
      auto end = text_.find('>', pos_);
      if (end == std::string_view::npos) throw SparqlSyntaxError("unterminated IRI");
      std::string iri(text_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return {Tok::iri, iri};
    }
    if (c == '?' || c == '$') {
      std::size_t start = ++pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '_')) {
        ++pos_;
      }
      if (pos_ == start) throw SparqlSyntaxError("empty variable name");
      return {Tok::var, std::string(text_.substr(start, pos_ - start))};
    }
    if (c == '"' || c == '\'') return literal(c);
    if (c == '_' && pos_ + 1 < text_.size() && text_[pos_ + 1] == ':') {
      pos_ += 2;
      return {Tok::blank, name()};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0 ||
        ((c == '-' || c == '+') && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) != 0)) {
      return number();
    }
    if (std::string_view("{}.;,*()[]").find(c) != std::string_view::npos) {
      ++pos_;
      return {Tok::punct, std::string(1, c)};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == ':') {
      std::string word = name();
      if (pos_ < text_.size() && text_[pos_] == ':') {
        ++pos_;
        return {Tok::pname, word + ":" + name()};
      }
      return {Tok::word, word};
    }
    throw SparqlSyntaxError(std::string("unexpected character '") + c + "'");
  }

  Token peek() {
    std::size_t saved = pos_;
    Token t = next();
    pos_ = saved;
    return t;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) {
        ++pos_;
      } else if (text_[pos_] == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  // Name characters; a trailing '.' ends a triple rather than the name.
  std::string name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    while (pos_ > start && text_[pos_ - 1] == '.') --pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Token literal(char quote) {
    std::string body;
    std::size_t i = pos_ + 1;
    for (; i < text_.size() && text_[i] != quote; ++i) {
      if (text_[i] == '\\' && i + 1 < text_.size()) {
        body += text_[i];
        body += text_[++i];
      } else if (text_[i] == '"') {
        body += "\\\"";  // single-quoted content re-quoted with double quotes
      } else {
        body += text_[i];
      }
    }
    if (i >= text_.size()) throw SparqlSyntaxError("unterminated string");
    pos_ = i + 1;
    std::string token = "\"" + body + "\"";
    if (pos_ < text_.size() && text_[pos_] == '@') {
      std::size_t start = pos_++;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) != 0 || text_[pos_] == '-')) {
        ++pos_;
      }
      token += text_.substr(start, pos_ - start);
    } else if (text_.substr(pos_).starts_with("^^")) {
      pos_ += 2;
      token += "^^";  // datatype follows as the next token
      return {Tok::literal, token};
    }
    return {Tok::literal, token};
  }

  Token number() {
    std::size_t start = pos_;
    if (text_[pos_] == '-' || text_[pos_] == '+') ++pos_;
    bool decimal = false;
    bool exponent = false;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
        ++pos_;
      } else if (c == '.' && !decimal && pos_ + 1 < text_.size() &&
                 std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])) != 0) {
        decimal = true;
        ++pos_;
      } else if ((c == 'e' || c == 'E') && !exponent) {
        exponent = true;
        ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
      } else {
        break;
      }
    }
    std::string lexical(text_.substr(start, pos_ - start));
    std::string type = exponent ? "double" : decimal ? "decimal" : "integer";
    return {Tok::number, "\"" + lexical + "\"^^<" + kXsd + type + ">"};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  BGPQuery parse() {
    BGPQuery q;
    Token t = lex_.next();
    while (t.kind == Tok::word && upper(t.text) == "PREFIX") {
      Token ns = lex_.next();
      if (ns.kind != Tok::pname || ns.text.back() != ':') {
        throw SparqlSyntaxError("PREFIX expects a namespace like 'ex:'");
      }
      Token iri = lex_.next();
      if (iri.kind != Tok::iri) throw SparqlSyntaxError("PREFIX expects an IRI");
      prefixes_[ns.text.substr(0, ns.text.size() - 1)] = iri.text;
      t = lex_.next();
    }
    expect_keyword(t, "SELECT");
    t = lex_.next();
    if (t.kind == Tok::word && upper(t.text) == "DISTINCT") {
      q.distinct = true;
      t = lex_.next();
    }
    if (t.kind == Tok::punct && t.text == "*") {
      q.wildcard = true;
      t = lex_.next();
    } else {
      while (t.kind == Tok::var) {
        if (std::find(q.projection.begin(), q.projection.end(), t.text) == q.projection.end()) {
          q.projection.push_back(t.text);
        }
        t = lex_.next();
      }
      if (q.projection.empty()) {
        check_unsupported(t);
        throw SparqlSyntaxError("SELECT needs variables or '*'");
      }
    }
    if (t.kind == Tok::word && upper(t.text) == "WHERE") t = lex_.next();
    if (t.kind != Tok::punct || t.text != "{") {
      check_unsupported(t);
      throw SparqlSyntaxError("expected '{'");
    }
    parse_triples(q);
    Token tail = lex_.next();
    if (tail.kind != Tok::end) {
      check_unsupported(tail);
      throw SparqlSyntaxError("unexpected trailing '" + tail.text + "'");
    }
    if (q.patterns.empty()) throw SparqlSyntaxError("empty graph pattern");
    auto vars = q.variables();
    for (const auto& v : q.projection) {
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) {
        throw SparqlSyntaxError("projected variable ?" + v + " does not occur in the pattern");
      }
    }
    return q;
  }

 private:
  void check_unsupported(const Token& t) {
    if (t.kind == Tok::word && kUnsupported.contains(upper(t.text))) {
      throw UnsupportedFeature(upper(t.text));
    }
    if (t.kind == Tok::punct && (t.text == "{" || t.text == "(" || t.text == "[")) {
      throw UnsupportedFeature(t.text == "{" ? "nested group" : t.text == "(" ? "expression"
                                                                             : "blank node property list");
    }
  }

  void expect_keyword(const Token& t, const std::string& keyword) {
    if (t.kind == Tok::word && upper(t.text) == keyword) return;
    check_unsupported(t);
    throw SparqlSyntaxError("expected " + keyword);
  }

  std::string expand(const std::string& pname) {
    auto colon = pname.find(':');
    auto it = prefixes_.find(pname.substr(0, colon));
    if (it == prefixes_.end()) {
      throw SparqlSyntaxError("undeclared prefix '" + pname.substr(0, colon) + ":'");
    }
    return it->second + pname.substr(colon + 1);
  }

  Term term(const Token& t, bool verb) {
    switch (t.kind) {
      case Tok::var:
        return Term::variable(t.text);
      case Tok::iri:
        return Term::iri(t.text);
      case Tok::pname:
        return Term::iri(expand(t.text));
      case Tok::number:
        return Term::literal(t.text);
      case Tok::literal: {
        if (!t.text.ends_with("^^")) return Term::literal(t.text);
        Token dt = lex_.next();
        std::string iri = dt.kind == Tok::iri     ? dt.text
                          : dt.kind == Tok::pname ? expand(dt.text)
                                                  : throw SparqlSyntaxError("datatype expected");
        return Term::literal(t.text + "<" + iri + ">");
      }
      case Tok::word:
        if (verb && t.text == "a") return Term::iri(kRdfType);
        if (t.text == "true" || t.text == "false") {
          return Term::literal("\"" + t.text + "\"^^<" + std::string(kXsd) + "boolean>");
        }
        break;
      case Tok::blank:
        throw UnsupportedFeature("blank node in query");
      default:
        break;
    }
    check_unsupported(t);
    throw SparqlSyntaxError("unexpected token '" + t.text + "'");
  }

  void add(BGPQuery& q, TriplePattern tp) {
    try {
      rdf::validate(tp);
    } catch (const rdf::InvalidTerm& e) {
      throw SparqlSyntaxError(e.what());
    }
    if (std::find(q.patterns.begin(), q.patterns.end(), tp) == q.patterns.end()) {
      q.patterns.push_back(std::move(tp));
    }
  }

  void parse_triples(BGPQuery& q) {
    for (;;) {
      Token t = lex_.next();
      if (t.kind == Tok::punct && t.text == "}") return;
      if (t.kind == Tok::end) throw SparqlSyntaxError("missing '}'");
      if (t.kind == Tok::punct && t.text == ".") continue;
      Term subject = term(t, false);
      // predicate-object list
      for (;;) {
        Term predicate = term(lex_.next(), true);
        for (;;) {
          add(q, {subject, predicate, term(lex_.next(), false)});
          if (lex_.peek().text != ",") break;
          lex_.next();
        }
        Token sep = lex_.peek();
        if (sep.kind == Tok::punct && sep.text == ";") {
          lex_.next();
          Token after = lex_.peek();
          if (after.kind == Tok::punct && (after.text == "." || after.text == "}")) break;
          continue;
        }
        break;
      }
      Token end = lex_.peek();
      if (end.kind == Tok::punct && (end.text == "." || end.text == "}")) continue;
      Token bad = lex_.next();
      check_unsupported(bad);
      throw SparqlSyntaxError("expected '.' or '}' after triple, got '" + bad.text + "'");
    }
  }

  Lexer lex_;
  std::map<std::string, std::string> prefixes_;
};

}  // namespace

BGPQuery parse_sparql_select(std::string_view text) {
  try {
    return Parser(text).parse();
  } catch (const rdf::InvalidTerm& e) {
    throw SparqlSyntaxError(e.what());
  }
}

std::string to_sparql(const BGPQuery& query) {
  std::string out = "SELECT ";
  if (query.distinct) out += "DISTINCT ";
  if (query.wildcard) {
    out += "*";
  } else {
    for (std::size_t i = 0; i < query.projection.size(); ++i) {
      out += (i ? " ?" : "?") + query.projection[i];
    }
  }
  out += " WHERE {\n";
  for (const auto& tp : query.patterns) {
    out += "  " + rdf::to_string(tp.subject) + " " + rdf::to_string(tp.predicate) + " " +
           rdf::to_string(tp.object) + " .\n";
  }
  return out + "}\n";
}

}  // namespace spf::client
