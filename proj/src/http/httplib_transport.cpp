#include <httplib.h>

#include "common/errors.hpp"
#include "common/types.hpp"
#include "http/transport.hpp"

namespace litrepo::http {

namespace {

class HttplibTransport final : public Transport {
public:
  explicit HttplibTransport(int timeout_seconds) : timeout_(timeout_seconds) {}

  Response get(const std::string &url,
               const std::vector<std::pair<std::string, std::string>> &headers) override {
    auto parts = split_url(url);
    httplib::Client client(parts.origin);
    client.set_follow_location(false);
    client.set_connection_timeout(timeout_, 0);
    client.set_read_timeout(timeout_, 0);
    client.enable_server_certificate_verification(true);

    httplib::Headers request_headers;
    for (const auto &[name, value] : headers) {
      request_headers.emplace(name, value);
    }
    auto result = client.Get(parts.target, request_headers);
    if (!result) {
      throw HttpError("GET " + url + ": " + httplib::to_string(result.error()), 0, true);
    }
    Response response;
    response.status = result->status;
    response.body = result->body;
    for (const auto &[name, value] : result->headers) {
      response.headers.emplace(to_lower(name), value);
    }
    return response;
  }

private:
  int timeout_;
};

} // namespace

std::unique_ptr<Transport> make_default_transport(int timeout_seconds) {
  return std::make_unique<HttplibTransport>(timeout_seconds);
}

} // namespace litrepo::http
