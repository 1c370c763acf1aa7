#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spf/client/sparql.hpp"
#include "spf/rdf/triple.hpp"

namespace spf::bench {

enum class Load : unsigned char { one_star, two_stars, three_stars, paths, mixed };

/// Labels are "1-star", "2-stars", "3-stars", "paths" and "union" (a round
/// robin over the other four).
const char* to_string(Load load);
/// Throws std::invalid_argument for unknown labels.
Load parse_load(const std::string& label);

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kExampleNamespace = "http://example.org/";

/// Synthetic entity graph. Every entity has a country, an award and a
/// birth date plus up to five more attributes drawn from a pool of ten, and
/// one or two outgoing `knows` links (plus optional `follows` and
/// `worksWith` links) to other entities. Deterministic for a fixed seed.
/// Throws std::invalid_argument when `entities` is 0.
std::vector<rdf::Triple> generate_dataset(std::size_t entities, std::uint64_t seed);

/// Writes the dataset as N-Triples. Throws std::runtime_error when the file
/// cannot be written.
void write_dataset(const std::string& path, std::size_t entities, std::uint64_t seed);

struct GeneratedQuery {
  std::string name;  // e.g. "2-stars-004"
  client::BGPQuery query;
};

struct QueryGenerationOptions {
  std::size_t max_attempts_per_query = 200;
  std::size_t max_results = 2000;  // larger answers are rejected
};

/// Builds `count` distinct queries of the given load from walks over the
/// data, keeping only queries the brute-force oracle answers with at least
/// one and at most `max_results` rows.
///
/// k-stars queries decompose into exactly k stars of at least two
/// patterns, joined through subject-object links or shared object values.
/// Path queries are subject-object chains of 5 to 9 patterns anchored at a
/// constant start or end. Throws GenerationError naming the load when the
/// attempts run out.
std::vector<GeneratedQuery> generate_queries(Load load, std::size_t count,
                                             std::span<const rdf::Triple> data,
                                             std::uint64_t seed,
                                             const QueryGenerationOptions& options = {});

/// Writes one `<name>.rq` file per query into `directory` (created if
/// needed) and returns the paths.
std::vector<std::string> write_queries(const std::string& directory,
                                       std::span<const GeneratedQuery> queries);

}  // namespace spf::bench
