#pragma once

#include <vector>

#include "spf/client/sparql.hpp"
#include "spf/rdf/triple.hpp"

namespace spf::client {

struct StarDecomposition {
  std::vector<rdf::StarPattern> stars;
};

/// Groups the query's patterns by subject term, variable or constant. Stars
/// appear in order of their subject's first occurrence and keep query order
/// internally.
StarDecomposition star_decompose(const BGPQuery& query);

/// One singleton star per pattern, in query order. This is the unit of
/// evaluation of the triple-pattern based clients.
StarDecomposition singleton_stars(const BGPQuery& query);

}  // namespace spf::client
