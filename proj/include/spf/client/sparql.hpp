#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spf/rdf/triple.hpp"

namespace spf::client {

/// A SELECT query over a single basic graph pattern.
struct BGPQuery {
  std::vector<std::string> projection;  // empty when wildcard
  bool wildcard = false;
  bool distinct = false;
  std::vector<rdf::TriplePattern> patterns;  // duplicates removed, order kept

  /// Every variable of the patterns in order of first occurrence.
  std::vector<std::string> variables() const;
  /// The projection, or all variables for `SELECT *`.
  std::vector<std::string> result_variables() const;
};

class SparqlSyntaxError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for valid SPARQL outside the supported subset.
class UnsupportedFeature : public std::runtime_error {
 public:
  explicit UnsupportedFeature(std::string keyword)
      : std::runtime_error("unsupported SPARQL feature: " + keyword), keyword_(std::move(keyword)) {}
  const std::string& keyword() const noexcept { return keyword_; }

 private:
  std::string keyword_;
};

/// Parses `PREFIX* SELECT [DISTINCT] (vars | *) [WHERE] { triples }`.
/// Triples may use `;` and `,` lists and the `a` shorthand. Prefixed names
/// are expanded to full IRIs.
BGPQuery parse_sparql_select(std::string_view text);

/// Renders a query in the accepted subset, with full IRIs.
std::string to_sparql(const BGPQuery& query);

}  // namespace spf::client
