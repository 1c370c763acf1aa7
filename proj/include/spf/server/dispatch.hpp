#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

#include "spf/fragments/selector.hpp"

namespace spf::server {

/// Transport-neutral view of an HTTP request.
struct RawRequest {
  std::string method;  // "GET" or "POST"
  std::string path;
  std::multimap<std::string, std::string> params;  // decoded query parameters
  std::string body;
};

/// A request failure mapped onto an HTTP status code.
class RequestError : public std::runtime_error {
 public:
  RequestError(int status, const std::string& message)
      : std::runtime_error(message), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

inline constexpr int kBadRequest = 400;
inline constexpr int kNotFound = 404;
inline constexpr int kMethodNotAllowed = 405;
inline constexpr int kRejected = 422;

struct FragmentRequest {
  std::string dataset;
  fragments::SelectorSpec selector;
  std::size_t page = 1;
};

enum class Endpoint : unsigned char { fragment, meta };

struct Route {
  std::string dataset;
  Endpoint endpoint;
};

/// Splits `/{dataset}/fragment` and `/{dataset}/meta`. Throws RequestError
/// (404) for any other path.
Route route(const std::string& path);

/// Decides which selector a request carries:
///  - GET with s/p/o parameters and no bindings: tp
///  - GET with a `bindings` parameter (JSON list): brtp
///  - POST {"selector":{"type":"tp",...}}: tp, or brtp when bindings are given
///  - POST {"selector":{"type":"star",...}}: star
/// Duplicated or conflicting fields are rejected with RequestError (400).
fragments::SelectorSpec dispatch_selector(const RawRequest& request);

/// Full parse of a fragment request including the page number.
FragmentRequest parse_fragment_request(const RawRequest& request);

}  // namespace spf::server
