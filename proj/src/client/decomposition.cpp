#include "spf/client/decomposition.hpp"

namespace spf::client {

StarDecomposition star_decompose(const BGPQuery& query) {
  std::vector<rdf::Term> roots;
  std::vector<std::vector<rdf::TriplePattern>> groups;
  for (const auto& tp : query.patterns) {
    std::size_t i = 0;
    while (i < roots.size() && roots[i] != tp.subject) ++i;
    if (i == roots.size()) {
      roots.push_back(tp.subject);
      groups.emplace_back();
    }
    groups[i].push_back(tp);
  }
  StarDecomposition out;
  for (auto& g : groups) out.stars.emplace_back(std::move(g));
  return out;
}

StarDecomposition singleton_stars(const BGPQuery& query) {
  StarDecomposition out;
  for (const auto& tp : query.patterns) out.stars.emplace_back(std::vector<rdf::TriplePattern>{tp});
  return out;
}

}  // namespace spf::client
