#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spf/rdf/triple.hpp"

namespace spf::rdf {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Parses line-oriented N-Triples. Blank lines and `#` comment lines are
/// skipped; duplicates are kept. Throws ParseError on the first malformed
/// statement.
std::vector<Triple> parse_ntriples(std::istream& in);
std::vector<Triple> parse_ntriples(std::string_view text);
std::vector<Triple> load_ntriples_file(const std::string& path);

std::string serialize_ntriples(std::span<const Triple> triples);

/// Reads one N-Triples term token starting at `pos` (IRI, blank node or
/// literal) and advances `pos` past it. Throws std::invalid_argument.
Term read_term_token(std::string_view text, std::size_t& pos);

}  // namespace spf::rdf
