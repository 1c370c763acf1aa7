#include "spf/client/source.hpp"

#include "httplib.h"

namespace spf::client {

namespace {

Fetched decode(const server::EncodedRequest& request, int status, std::string body) {
  if (status != 200) {
    throw TransportError("server answered " + std::to_string(status) + ": " + body);
  }
  Fetched out;
  out.request_bytes = request.bytes();
  out.response_bytes = body.size();
  try {
    out.page = server::parse_page(body);
  } catch (const std::invalid_argument& e) {
    throw TransportError(e.what());
  }
  out.body = std::move(body);
  return out;
}

void check_deadline(Clock::time_point deadline) {
  if (Clock::now() >= deadline) throw QueryTimeout();
}

}  // namespace

struct HttpFragmentSource::Impl {
  Impl(const std::string& host, int port) : client(host, port) {
    client.set_keep_alive(true);
    client.set_tcp_nodelay(true);
    client.set_connection_timeout(5);
  }
  httplib::Client client;
};

HttpFragmentSource::HttpFragmentSource(std::string host, int port, std::string dataset)
    : impl_(std::make_unique<Impl>(host, port)), dataset_(std::move(dataset)) {}

HttpFragmentSource::~HttpFragmentSource() = default;

Fetched HttpFragmentSource::fetch(const server::EncodedRequest& request,
                                  Clock::time_point deadline) {
  check_deadline(deadline);
  auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
  impl_->client.set_read_timeout(std::max<std::chrono::milliseconds>(remaining,
                                                                     std::chrono::milliseconds(1)));
  auto send = [&] {
    return request.method == server::Method::get
               ? impl_->client.Get(request.target)
               : impl_->client.Post(request.target, request.body, "application/json");
  };
  httplib::Result res = send();
  // A kept-alive connection may have been closed by the server while idle;
  // fragment requests are safe to repeat, so try once more on a fresh one.
  if (!res && (res.error() == httplib::Error::Read || res.error() == httplib::Error::Write) &&
      Clock::now() < deadline) {
    res = send();
  }
  if (!res) {
    check_deadline(deadline);
    throw TransportError("request to " + request.target + " failed: " + httplib::to_string(res.error()));
  }
  return decode(request, res->status, std::move(res->body));
}

std::string HttpFragmentSource::meta() {
  auto res = impl_->client.Get("/" + dataset_ + "/meta");
  if (!res) throw TransportError("server unreachable: " + httplib::to_string(res.error()));
  if (res->status != 200) throw TransportError("meta request failed: " + res->body);
  return res->body;
}

LocalFragmentSource::LocalFragmentSource(std::shared_ptr<const server::FragmentServer> server,
                                         std::string dataset)
    : server_(std::move(server)), dataset_(std::move(dataset)) {}

Fetched LocalFragmentSource::fetch(const server::EncodedRequest& request,
                                   Clock::time_point deadline) {
  check_deadline(deadline);
  server::RawRequest raw;
  raw.method = request.method == server::Method::get ? "GET" : "POST";
  auto q = request.target.find('?');
  raw.path = request.target.substr(0, q);
  if (q != std::string::npos) {
    httplib::Params params;
    httplib::detail::parse_query_text(request.target.substr(q + 1), params);
    raw.params.insert(params.begin(), params.end());
  }
  raw.body = request.body;
  auto response = server_->handle(raw);
  return decode(request, response.status, std::move(response.body));
}

std::pair<std::string, int> parse_server_address(const std::string& address) {
  std::string rest = address;
  if (rest.starts_with("http://")) rest = rest.substr(7);
  while (!rest.empty() && rest.back() == '/') rest.pop_back();
  auto colon = rest.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw std::invalid_argument("server address must be host:port, got '" + address + "'");
  }
  try {
    std::size_t used = 0;
    int port = std::stoi(rest.substr(colon + 1), &used);
    if (used != rest.size() - colon - 1 || port <= 0 || port > 65535) throw std::out_of_range("");
    return {rest.substr(0, colon), port};
  } catch (const std::exception&) {
    throw std::invalid_argument("invalid port in '" + address + "'");
  }
}

}  // namespace spf::client
