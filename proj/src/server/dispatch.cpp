#include "spf/server/dispatch.hpp"

#include <set>
#include <vector>

#include "json.hpp"

namespace spf::server {

using nlohmann::json;
using fragments::Omega;
using fragments::SelectorSpec;

namespace {

[[noreturn]] void bad_request(const std::string& message) {
  throw RequestError(kBadRequest, message);
}

// Parses JSON, rejecting objects that repeat a key.
json parse_strict(const std::string& text) {
  std::vector<std::set<std::string>> keys;
  auto on_event = [&keys](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start:
        keys.emplace_back();
        break;
      case json::parse_event_t::object_end:
        keys.pop_back();
        break;
      case json::parse_event_t::key:
        if (!keys.back().insert(parsed.get<std::string>()).second) {
          bad_request("duplicated field '" + parsed.get<std::string>() + "'");
        }
        break;
      default:
        break;
    }
    return true;
  };
  try {
    return json::parse(text, on_event);
  } catch (const json::exception& e) {
    bad_request(std::string("malformed JSON: ") + e.what());
  }
}

rdf::Term term_from(const json& j) {
  if (!j.is_string()) bad_request("terms must be strings");
  try {
    return rdf::parse_term(j.get<std::string>());
  } catch (const rdf::InvalidTerm& e) {
    bad_request(e.what());
  }
}

rdf::TriplePattern pattern_from(const json& j) {
  if (!j.is_array() || j.size() != 3) bad_request("a pattern is an array of three terms");
  rdf::TriplePattern tp{term_from(j[0]), term_from(j[1]), term_from(j[2])};
  try {
    rdf::validate(tp);
  } catch (const rdf::InvalidTerm& e) {
    bad_request(e.what());
  }
  return tp;
}

Omega bindings_from(const json& j) {
  if (!j.is_array()) bad_request("bindings must be an array");
  Omega omega;
  std::set<rdf::SolutionMapping> seen;
  for (const auto& entry : j) {
    if (!entry.is_object()) bad_request("each binding must be an object");
    rdf::SolutionMapping mu;
    for (const auto& [var, value] : entry.items()) {
      auto term = term_from(value);
      if (term.is_variable()) bad_request("binding for ?" + var + " is a variable");
      mu.bind(var, std::move(term));
    }
    if (!seen.insert(mu).second) bad_request("duplicate binding " + rdf::to_string(mu));
    omega.push_back(std::move(mu));
  }
  return omega;
}

std::size_t page_from_string(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &pos);
  } catch (const std::exception&) {
    bad_request("page must be a positive integer");
  }
  if (pos != text.size() || value == 0 || text.front() == '-') {
    bad_request("page must be a positive integer");
  }
  return static_cast<std::size_t>(value);
}

std::size_t page_from_json(const json& j) {
  if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0) {
    bad_request("page must be a positive integer");
  }
  return static_cast<std::size_t>(j.get<std::uint64_t>());
}

const std::string* single_param(const RawRequest& request, const std::string& name) {
  auto [first, last] = request.params.equal_range(name);
  if (first == last) return nullptr;
  if (std::next(first) != last) bad_request("duplicated parameter '" + name + "'");
  return &first->second;
}

FragmentRequest parse_get(const RawRequest& request, std::string dataset) {
  static const std::set<std::string> known = {"s", "p", "o", "page", "bindings"};
  for (const auto& [name, value] : request.params) {
    if (!known.contains(name)) bad_request("unknown parameter '" + name + "'");
  }
  auto position = [&](const std::string& name) {
    const std::string* value = single_param(request, name);
    if (value == nullptr || value->empty()) return rdf::Term::variable(name);
    return term_from(json(*value));
  };
  rdf::TriplePattern tp{position("s"), position("p"), position("o")};
  try {
    rdf::validate(tp);
  } catch (const rdf::InvalidTerm& e) {
    bad_request(e.what());
  }
  std::size_t page = 1;
  if (const std::string* p = single_param(request, "page")) page = page_from_string(*p);
  Omega omega;
  if (const std::string* b = single_param(request, "bindings")) omega = bindings_from(parse_strict(*b));
  auto selector = omega.empty() ? SelectorSpec::tp(std::move(tp))
                                : SelectorSpec::brtp(std::move(tp), std::move(omega));
  return {std::move(dataset), std::move(selector), page};
}

FragmentRequest parse_post(const RawRequest& request, std::string dataset) {
  json body = parse_strict(request.body);
  if (!body.is_object()) bad_request("request body must be an object");
  for (const auto& [key, value] : body.items()) {
    if (key != "selector" && key != "page") bad_request("unknown field '" + key + "'");
  }
  if (!body.contains("selector") || !body["selector"].is_object()) {
    bad_request("missing selector object");
  }
  const json& sel = body["selector"];
  for (const auto& [key, value] : sel.items()) {
    if (key != "type" && key != "pattern" && key != "patterns" && key != "bindings") {
      bad_request("unknown selector field '" + key + "'");
    }
  }
  if (!sel.contains("type") || !sel["type"].is_string()) bad_request("selector type missing");
  std::string type = sel["type"].get<std::string>();
  if (sel.contains("pattern") && sel.contains("patterns")) {
    bad_request("selector carries both 'pattern' and 'patterns'");
  }
  Omega omega = sel.contains("bindings") ? bindings_from(sel["bindings"]) : Omega{};
  std::size_t page = body.contains("page") ? page_from_json(body["page"]) : 1;

  if (type == "tp") {
    if (!sel.contains("pattern")) bad_request("tp selector needs 'pattern'");
    auto tp = pattern_from(sel["pattern"]);
    auto selector = omega.empty() ? SelectorSpec::tp(std::move(tp))
                                  : SelectorSpec::brtp(std::move(tp), std::move(omega));
    return {std::move(dataset), std::move(selector), page};
  }
  if (type == "star") {
    if (!sel.contains("patterns") || !sel["patterns"].is_array()) {
      bad_request("star selector needs 'patterns'");
    }
    std::vector<rdf::TriplePattern> patterns;
    for (const auto& p : sel["patterns"]) patterns.push_back(pattern_from(p));
    try {
      rdf::StarPattern star(std::move(patterns));
      return {std::move(dataset), SelectorSpec::star(std::move(star), std::move(omega)), page};
    } catch (const rdf::InvalidTerm& e) {
      bad_request(e.what());
    }
  }
  bad_request("unknown selector type '" + type + "'");
}

}  // namespace

Route route(const std::string& path) {
  if (path.size() > 1 && path.front() == '/') {
    auto slash = path.find('/', 1);
    if (slash != std::string::npos && slash > 1) {
      std::string dataset = path.substr(1, slash - 1);
      std::string rest = path.substr(slash + 1);
      if (rest == "fragment") return {std::move(dataset), Endpoint::fragment};
      if (rest == "meta") return {std::move(dataset), Endpoint::meta};
    }
  }
  throw RequestError(kNotFound, "no such resource: " + path);
}

FragmentRequest parse_fragment_request(const RawRequest& request) {
  Route r = route(request.path);
  if (r.endpoint != Endpoint::fragment) throw RequestError(kNotFound, "not a fragment resource");
  if (request.method == "GET") return parse_get(request, std::move(r.dataset));
  if (request.method == "POST") {
    if (!request.params.empty()) bad_request("POST selectors travel in the body only");
    return parse_post(request, std::move(r.dataset));
  }
  throw RequestError(kMethodNotAllowed, "method " + request.method + " not allowed");
}

fragments::SelectorSpec dispatch_selector(const RawRequest& request) {
  return parse_fragment_request(request).selector;
}

}  // namespace spf::server
