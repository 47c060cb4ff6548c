#include <cctype>

#include <fmt/format.h>

#include "common/errors.hpp"
#include "common/types.hpp"
#include "http/transport.hpp"

namespace litrepo::http {

std::optional<std::string> Response::header(std::string_view name) const {
  auto it = headers.find(to_lower(name));
  if (it == headers.end()) {
    return std::nullopt;
  }
  return it->second;
}

UrlParts split_url(const std::string &url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ValidationError("not an absolute URL: " + url);
  }
  auto scheme = to_lower(std::string_view(url).substr(0, scheme_end));
  if (scheme != "http" && scheme != "https") {
    throw ValidationError("unsupported URL scheme: " + url);
  }
  auto host_begin = scheme_end + 3;
  auto path_begin = url.find_first_of("/?#", host_begin);
  if (path_begin == host_begin) {
    throw ValidationError("URL has no host: " + url);
  }
  UrlParts parts;
  parts.origin = url.substr(0, path_begin);
  parts.target = path_begin == std::string::npos ? "/" : url.substr(path_begin);
  if (auto hash = parts.target.find('#'); hash != std::string::npos) {
    parts.target.erase(hash);
  }
  if (parts.target.empty() || parts.target.front() != '/') {
    parts.target.insert(0, "/");
  }
  return parts;
}

std::string url_encode(std::string_view text) {
  std::string out;
  out.reserve(text.size() * 3);
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out += fmt::format("%{:02X}", c);
    }
  }
  return out;
}

// Link: <https://api.github.com/...&page=2>; rel="next", <...>; rel="last"
std::optional<std::string> next_link(std::string_view link_header) {
  std::size_t pos = 0;
  while (pos < link_header.size()) {
    auto open = link_header.find('<', pos);
    if (open == std::string_view::npos) {
      break;
    }
    auto close = link_header.find('>', open);
    if (close == std::string_view::npos) {
      break;
    }
    auto target = link_header.substr(open + 1, close - open - 1);
    auto entry_end = link_header.find('<', close);
    auto params = link_header.substr(
        close + 1,
        entry_end == std::string_view::npos ? std::string_view::npos : entry_end - close - 1);
    auto rel = params.find("rel=");
    if (rel != std::string_view::npos) {
      auto value = params.substr(rel + 4);
      if (!value.empty() && value.front() == '"') {
        value.remove_prefix(1);
        value = value.substr(0, value.find('"'));
      } else {
        value = value.substr(0, value.find_first_of(";, "));
      }
      // rel may hold several space-separated relation types.
      std::size_t start = 0;
      while (start <= value.size()) {
        auto stop = value.find(' ', start);
        auto token = value.substr(start, stop == std::string_view::npos
                                             ? std::string_view::npos
                                             : stop - start);
        if (to_lower(token) == "next") {
          return std::string(target);
        }
        if (stop == std::string_view::npos) {
          break;
        }
        start = stop + 1;
      }
    }
    pos = close + 1;
  }
  return std::nullopt;
}

} // namespace litrepo::http
