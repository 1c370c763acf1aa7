#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "spf/fragments/selector.hpp"

namespace spf::fragments {

/// Hypermedia controls by name. Fragments carry the collection control
/// `fragmentTemplate`; pages add `nextPage` when more data follows.
using Controls = std::map<std::string, std::string>;

inline constexpr const char* kFragmentTemplateControl = "fragmentTemplate";
inline constexpr const char* kNextPageControl = "nextPage";

struct FragmentMetadata {
  std::size_t cnt = 0;  // exact number of groups

  friend bool operator==(const FragmentMetadata&, const FragmentMetadata&) = default;
};

struct Fragment {
  std::string source_uri;
  SelectorSpec selector;
  std::vector<TripleGroup> groups;
  FragmentMetadata metadata;
  Controls controls;
};

struct PageMetadata {
  std::size_t cnt = 0;
  std::size_t page = 1;
  std::size_t page_size = kDefaultPageSize;
  bool has_next = false;

  friend bool operator==(const PageMetadata&, const PageMetadata&) = default;
};

struct FragmentPage {
  std::string page_uri;
  std::string fragment_uri;
  SelectorSpec selector;
  std::vector<TripleGroup> groups;
  PageMetadata metadata;
  Controls controls;
};

/// Template of the collection control derived from a fragment URI: the path
/// part followed by `{?s,p,o,page}`.
std::string collection_template(const std::string& source_uri);
std::string page_uri(const std::string& source_uri, std::size_t page);

Fragment make_fragment(std::string source_uri, SelectorSpec selector, const rdf::Graph& g);

/// Slices page `page` (1-based) out of `f`. Pages past the end are empty with
/// has_next false. Throws std::invalid_argument for page or page_size 0.
FragmentPage paginate(const Fragment& f, std::size_t page, std::size_t page_size);

/// Equivalent to paginate(make_fragment(...), page, page_size) but only
/// materializes the groups on the requested page.
FragmentPage make_page(std::string source_uri, SelectorSpec selector, const rdf::Graph& g,
                       std::size_t page, std::size_t page_size);

}  // namespace spf::fragments
