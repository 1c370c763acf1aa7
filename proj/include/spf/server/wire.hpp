#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "spf/fragments/fragment.hpp"

namespace spf::server {

/// What a page looks like on the wire: everything except the selector and
/// the URIs, which the requester already knows.
struct PagePayload {
  fragments::PageMetadata metadata;
  fragments::Controls controls;
  std::vector<fragments::TripleGroup> groups;

  friend bool operator==(const PagePayload&, const PagePayload&) = default;
};

PagePayload payload_of(const fragments::FragmentPage& page);

struct SerializedBody {
  std::string body;
  std::size_t bytes = 0;
};

/// JSON encoding:
///   {"controls":{"fragmentTemplate":...,"nextPage":...},
///    "groups":[{"mapping":{"var":"<term>"},"triples":[["<s>","<p>","<o>"]]}],
///    "metadata":{"cnt":n,"hasNext":b,"page":n,"pageSize":n}}
/// Keys are emitted in sorted order and without whitespace, so equal pages
/// serialize to equal bytes.
SerializedBody serialize_page(const fragments::FragmentPage& page);
SerializedBody serialize_payload(const PagePayload& payload);

/// Throws std::invalid_argument on malformed input.
PagePayload parse_page(std::string_view body);

enum class Method : unsigned char { get, post };

/// A fragment request as sent over HTTP. The request target is the path
/// plus query string.
struct EncodedRequest {
  Method method = Method::get;
  std::string target;
  std::string body;

  /// Bytes charged to network traffic: request target plus body. Header
  /// lines are not counted.
  std::size_t bytes() const noexcept { return target.size() + body.size(); }
};

/// GET encoding only supports tp selectors (s, p, o and page query
/// parameters). POST carries
///   {"page":n,"selector":{"type":"tp"|"star","pattern"|"patterns":...,
///    "bindings":[{"var":"<term>"}]}}
/// with `bindings` omitted when Omega is empty. Throws std::invalid_argument
/// for a GET of a restricted or star selector.
EncodedRequest encode_request(const std::string& dataset, const fragments::SelectorSpec& selector,
                              std::size_t page, Method method);

/// Selector part of the POST body, without the page number.
std::string encode_selector_json(const fragments::SelectorSpec& selector);

/// Hash of a body, used to compare responses within one process.
std::uint64_t digest(std::string_view bytes);

std::string url_encode(const std::string& value);
std::string url_decode(const std::string& value);

}  // namespace spf::server
