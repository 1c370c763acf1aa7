#include "spf/server/wire.hpp"

#include <functional>
#include <stdexcept>

#include "httplib.h"
#include "json.hpp"

namespace spf::server {

using nlohmann::json;

namespace {

json encode_mapping(const rdf::SolutionMapping& mu) {
  json out = json::object();
  for (const auto& [var, value] : mu.bindings()) out[var] = rdf::to_string(value);
  return out;
}

json encode_pattern(const rdf::TriplePattern& tp) {
  return json::array(
      {rdf::to_string(tp.subject), rdf::to_string(tp.predicate), rdf::to_string(tp.object)});
}

rdf::SolutionMapping decode_mapping(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("mapping must be an object");
  rdf::SolutionMapping mu;
  for (const auto& [var, value] : j.items()) {
    mu.bind(var, rdf::parse_term(value.get<std::string>()));
  }
  return mu;
}

std::string dump(const json& j) {
  return j.dump(-1, ' ', false, json::error_handler_t::replace);
}

}  // namespace

PagePayload payload_of(const fragments::FragmentPage& page) {
  return {page.metadata, page.controls, page.groups};
}

SerializedBody serialize_page(const fragments::FragmentPage& page) {
  return serialize_payload(payload_of(page));
}

SerializedBody serialize_payload(const PagePayload& payload) {
  json groups = json::array();
  for (const auto& g : payload.groups) {
    json triples = json::array();
    for (const auto& t : g.triples) triples.push_back(encode_pattern(rdf::as_pattern(t)));
    groups.push_back({{"mapping", encode_mapping(g.mapping)}, {"triples", std::move(triples)}});
  }
  json controls = json::object();
  for (const auto& [name, uri] : payload.controls) controls[name] = uri;
  json body = {
      {"metadata",
       {{"cnt", payload.metadata.cnt},
        {"page", payload.metadata.page},
        {"pageSize", payload.metadata.page_size},
        {"hasNext", payload.metadata.has_next}}},
      {"controls", std::move(controls)},
      {"groups", std::move(groups)},
  };
  SerializedBody out{dump(body), 0};
  out.bytes = out.body.size();
  return out;
}

PagePayload parse_page(std::string_view body) {
  try {
    json j = json::parse(body);
    PagePayload out;
    const auto& meta = j.at("metadata");
    out.metadata.cnt = meta.at("cnt").get<std::size_t>();
    out.metadata.page = meta.at("page").get<std::size_t>();
    out.metadata.page_size = meta.at("pageSize").get<std::size_t>();
    out.metadata.has_next = meta.at("hasNext").get<bool>();
    for (const auto& [name, uri] : j.at("controls").items()) {
      out.controls[name] = uri.get<std::string>();
    }
    for (const auto& g : j.at("groups")) {
      fragments::TripleGroup group;
      group.mapping = decode_mapping(g.at("mapping"));
      for (const auto& t : g.at("triples")) {
        if (!t.is_array() || t.size() != 3) throw std::invalid_argument("triple must have 3 terms");
        group.triples.push_back({rdf::parse_term(t[0].get<std::string>()),
                                 rdf::parse_term(t[1].get<std::string>()),
                                 rdf::parse_term(t[2].get<std::string>())});
      }
      out.groups.push_back(std::move(group));
    }
    return out;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed page: ") + e.what());
  }
}

std::string encode_selector_json(const fragments::SelectorSpec& selector) {
  json sel = json::object();
  if (selector.kind() == fragments::SelectorKind::star) {
    sel["type"] = "star";
    json patterns = json::array();
    for (const auto& tp : selector.star().patterns()) patterns.push_back(encode_pattern(tp));
    sel["patterns"] = std::move(patterns);
  } else {
    sel["type"] = "tp";
    sel["pattern"] = encode_pattern(selector.pattern());
  }
  if (!selector.omega().empty()) {
    json bindings = json::array();
    for (const auto& mu : selector.omega()) bindings.push_back(encode_mapping(mu));
    sel["bindings"] = std::move(bindings);
  }
  return dump(sel);
}

EncodedRequest encode_request(const std::string& dataset, const fragments::SelectorSpec& selector,
                              std::size_t page, Method method) {
  EncodedRequest out;
  out.method = method;
  if (method == Method::get) {
    if (selector.kind() != fragments::SelectorKind::tp) {
      throw std::invalid_argument(std::string("GET cannot carry a ") +
                                  fragments::to_string(selector.kind()) + " selector");
    }
    const auto& tp = selector.pattern();
    out.target = "/" + dataset + "/fragment?s=" + url_encode(rdf::to_string(tp.subject)) +
                 "&p=" + url_encode(rdf::to_string(tp.predicate)) +
                 "&o=" + url_encode(rdf::to_string(tp.object)) + "&page=" + std::to_string(page);
    return out;
  }
  out.target = "/" + dataset + "/fragment";
  json body = {{"selector", json::parse(encode_selector_json(selector))}, {"page", page}};
  out.body = dump(body);
  return out;
}

std::uint64_t digest(std::string_view bytes) { return std::hash<std::string_view>{}(bytes); }

std::string url_encode(const std::string& value) {
  return httplib::detail::encode_query_param(value);
}

std::string url_decode(const std::string& value) {
  return httplib::detail::decode_url(value, true);
}

}  // namespace spf::server
