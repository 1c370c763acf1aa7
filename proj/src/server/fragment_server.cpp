#include "spf/server/fragment_server.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "spf/server/wire.hpp"

namespace spf::server {

void ServerConfig::validate() const {
  if (page_size < 1) throw std::invalid_argument("page size must be at least 1");
  if (max_omega < 1) throw std::invalid_argument("max omega must be at least 1");
  if (max_star_size < 1) throw std::invalid_argument("max star size must be at least 1");
  if (threads < 1) throw std::invalid_argument("thread count must be at least 1");
}

FragmentServer::FragmentServer(ServerConfig config) : config_(std::move(config)) {
  config_.validate();
}

void FragmentServer::add_dataset(const std::string& name, std::shared_ptr<const rdf::Graph> graph) {
  datasets_[name] = std::move(graph);
}

const rdf::Graph& FragmentServer::dataset(const std::string& name) const {
  auto it = datasets_.find(name);
  if (it == datasets_.end()) throw RequestError(kNotFound, "unknown dataset '" + name + "'");
  return *it->second;
}

std::string FragmentServer::fragment_uri(const std::string& dataset,
                                         const fragments::SelectorSpec& selector) {
  std::string base = "/" + dataset + "/fragment";
  if (selector.kind() == fragments::SelectorKind::tp) {
    const auto& tp = selector.pattern();
    return base + "?s=" + url_encode(rdf::to_string(tp.subject)) +
           "&p=" + url_encode(rdf::to_string(tp.predicate)) +
           "&o=" + url_encode(rdf::to_string(tp.object));
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx",
                static_cast<unsigned long long>(digest(encode_selector_json(selector))));
  return base + "?selector=" + hex;
}

fragments::FragmentPage FragmentServer::handle_fragment_request(
    const FragmentRequest& request) const {
  const rdf::Graph& g = dataset(request.dataset);
  try {
    request.selector.validate(config_.max_omega, config_.max_star_size);
  } catch (const fragments::InvalidSelector& e) {
    throw RequestError(kRejected, e.what());
  }
  if (request.page == 0) throw RequestError(kBadRequest, "page numbers start at 1");
  return fragments::make_page(fragment_uri(request.dataset, request.selector), request.selector,
                              g, request.page, config_.page_size);
}

Response FragmentServer::handle(const RawRequest& request) const {
  try {
    Route r = route(request.path);
    if (r.endpoint == Endpoint::meta) {
      if (request.method != "GET") throw RequestError(kMethodNotAllowed, "meta is GET only");
      const rdf::Graph& g = dataset(r.dataset);
      nlohmann::json meta = {{"tripleCount", g.size()},
                             {"pageSize", config_.page_size},
                             {"maxOmega", config_.max_omega}};
      return {200, meta.dump()};
    }
    auto page = handle_fragment_request(parse_fragment_request(request));
    return {200, serialize_page(page).body};
  } catch (const RequestError& e) {
    nlohmann::json err = {{"error", e.what()}, {"status", e.status()}};
    return {e.status(), err.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace)};
  }
}

}  // namespace spf::server
