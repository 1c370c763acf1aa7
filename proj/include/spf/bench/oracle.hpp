#pragma once

#include <span>
#include <vector>

#include "spf/client/sparql.hpp"
#include "spf/rdf/mapping.hpp"
#include "spf/rdf/triple.hpp"

namespace spf::bench {

/// Evaluates a BGP by backtracking over the plain triple list, without any
/// index. Duplicate triples count once. Rows are projected onto the query's
/// result variables, deduplicated only for DISTINCT, and returned sorted.
std::vector<rdf::SolutionMapping> oracle_evaluate(std::span<const rdf::Triple> triples,
                                                  const client::BGPQuery& query);

/// Sorts rows so two result multisets can be compared with ==.
std::vector<rdf::SolutionMapping> sorted_rows(std::vector<rdf::SolutionMapping> rows);

}  // namespace spf::bench
