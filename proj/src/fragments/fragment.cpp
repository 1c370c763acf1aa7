#include "spf/fragments/fragment.hpp"

#include <cstdint>
#include <stdexcept>

namespace spf::fragments {

namespace {

void check_paging(std::size_t page, std::size_t page_size) {
  if (page == 0) throw std::invalid_argument("page numbers start at 1");
  if (page_size == 0) throw std::invalid_argument("page size must be positive");
}

std::size_t page_offset(std::size_t page, std::size_t page_size) {
  return (page - 1) <= SIZE_MAX / page_size ? (page - 1) * page_size : SIZE_MAX;
}

FragmentPage page_skeleton(const std::string& source_uri, const SelectorSpec& selector,
                           const Controls& controls, std::size_t cnt, std::size_t page,
                           std::size_t page_size) {
  FragmentPage out{page_uri(source_uri, page), source_uri, selector, {}, {}, controls};
  out.metadata.cnt = cnt;
  out.metadata.page = page;
  out.metadata.page_size = page_size;
  // Use division so huge page numbers cannot overflow.
  out.metadata.has_next = cnt > 0 && page <= (cnt - 1) / page_size;
  if (out.metadata.has_next) {
    out.controls[kNextPageControl] = page_uri(source_uri, page + 1);
  }
  return out;
}

}  // namespace

std::string collection_template(const std::string& source_uri) {
  return source_uri.substr(0, source_uri.find('?')) + "{?s,p,o,page}";
}

std::string page_uri(const std::string& source_uri, std::size_t page) {
  char sep = source_uri.find('?') == std::string::npos ? '?' : '&';
  return source_uri + sep + "page=" + std::to_string(page);
}

Fragment make_fragment(std::string source_uri, SelectorSpec selector, const rdf::Graph& g) {
  auto groups = select(g, selector);
  FragmentMetadata metadata{groups.size()};
  Controls controls{{kFragmentTemplateControl, collection_template(source_uri)}};
  return Fragment{std::move(source_uri), std::move(selector), std::move(groups), metadata,
                  std::move(controls)};
}

FragmentPage paginate(const Fragment& f, std::size_t page, std::size_t page_size) {
  check_paging(page, page_size);
  auto out = page_skeleton(f.source_uri, f.selector, f.controls, f.metadata.cnt, page, page_size);
  std::size_t begin = page_offset(page, page_size);
  for (std::size_t i = begin; i < f.groups.size() && i - begin < page_size; ++i) {
    out.groups.push_back(f.groups[i]);
  }
  return out;
}

FragmentPage make_page(std::string source_uri, SelectorSpec selector, const rdf::Graph& g,
                       std::size_t page, std::size_t page_size) {
  check_paging(page, page_size);
  auto slice = select_slice(g, selector, page_offset(page, page_size), page_size);
  Controls controls{{kFragmentTemplateControl, collection_template(source_uri)}};
  auto out = page_skeleton(source_uri, selector, controls, slice.total, page, page_size);
  out.groups = std::move(slice.groups);
  return out;
}

}  // namespace spf::fragments
