#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace litrepo::http {

/// Header map with lowercased names.
using Headers = std::map<std::string, std::string>;

struct Response {
  int status = 0;
  Headers headers;
  std::string body;

  /// Header lookup by any-case name.
  std::optional<std::string> header(std::string_view name) const;
};

/// Blocking GET. Throws HttpError(status 0, retryable) when no response
/// arrives; any received response is returned as-is, redirects included.
class Transport {
public:
  virtual ~Transport() = default;
  virtual Response get(const std::string &url,
                       const std::vector<std::pair<std::string, std::string>> &headers) = 0;
};

/// Transport backed by cpp-httplib; https requires the OpenSSL build.
std::unique_ptr<Transport> make_default_transport(int timeout_seconds = 30);

struct UrlParts {
  std::string origin; ///< scheme://host[:port]
  std::string target; ///< /path?query, "/" when empty
};

/// Splits an absolute http(s) URL. Throws ValidationError otherwise.
UrlParts split_url(const std::string &url);

/// Percent-encodes everything outside RFC 3986 unreserved characters.
std::string url_encode(std::string_view text);

/// Target URL of the rel="next" entry in a Link header, if any.
std::optional<std::string> next_link(std::string_view link_header);

} // namespace litrepo::http
