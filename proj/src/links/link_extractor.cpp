#include "links/link_extractor.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <unordered_map>

namespace litrepo::links {

namespace {

// Scheme, optional www., the github.com host, then RFC 3986 URL characters.
const std::regex &github_url_pattern() {
  static const std::regex pattern(
      R"(https?://(?:www\.)?github\.com(?:/[A-Za-z0-9\-._~:/?#\[\]@!$&'()*+,;=%]*)?)",
      std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
  return pattern;
}

bool ends_with_ci(std::string_view text, std::string_view suffix) {
  return text.size() >= suffix.size() &&
         to_lower(text.substr(text.size() - suffix.size())) == suffix;
}

} // namespace

bool valid_slug(std::string_view slug) {
  if (slug.empty() || slug == "." || slug == "..") {
    return false;
  }
  return std::all_of(slug.begin(), slug.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_' || c == '.';
  });
}

std::vector<RawUrlHit> extract_urls(std::string_view text, const std::string &source) {
  std::vector<RawUrlHit> hits;
  using Iter = std::string_view::const_iterator;
  std::regex_iterator<Iter> it(text.begin(), text.end(), github_url_pattern());
  for (; it != std::regex_iterator<Iter>(); ++it) {
    hits.push_back({it->str(), source});
  }
  return hits;
}

std::string clean_url(std::string_view url) {
  auto last = url.find_last_not_of(kTrailingJunk);
  if (last == std::string_view::npos) {
    return {};
  }
  return std::string(url.substr(0, last + 1));
}

RepoRef canonicalize(std::string_view cleaned, const std::string &source) {
  auto scheme_end = cleaned.find("://");
  if (scheme_end == std::string_view::npos) {
    throw MalformedUrlError("not an absolute URL: " + std::string(cleaned));
  }
  auto scheme = to_lower(cleaned.substr(0, scheme_end));
  if (scheme != "http" && scheme != "https") {
    throw MalformedUrlError("not an http(s) URL: " + std::string(cleaned));
  }
  auto rest = cleaned.substr(scheme_end + 3);
  auto host_end = rest.find_first_of("/?#");
  auto host = to_lower(rest.substr(0, host_end));
  if (host != "github.com" && host != "www.github.com") {
    throw MalformedUrlError("not a github.com URL: " + std::string(cleaned));
  }
  std::string_view path =
      host_end == std::string_view::npos ? std::string_view{} : rest.substr(host_end);
  path = path.substr(0, path.find_first_of("?#"));
  if (!path.empty() && path.front() == '/') {
    path.remove_prefix(1);
  }

  std::vector<std::string_view> segments;
  while (!path.empty()) {
    auto slash = path.find('/');
    segments.push_back(path.substr(0, slash));
    if (slash == std::string_view::npos) {
      break;
    }
    path.remove_prefix(slash + 1);
  }
  while (!segments.empty() && segments.back().empty()) {
    segments.pop_back();
  }
  if (segments.size() < 2) {
    throw NotARepositoryError("no owner/repository path: " + std::string(cleaned));
  }

  std::string_view owner = segments[0];
  std::string_view name = segments[1];
  if (ends_with_ci(name, ".git")) {
    name.remove_suffix(4);
  }
  if (!valid_slug(owner) || !valid_slug(name)) {
    throw MalformedUrlError("invalid owner or repository name: " + std::string(cleaned));
  }

  RepoRef ref;
  ref.owner = std::string(owner);
  ref.name = std::string(name);
  ref.canonical_url = "https://github.com/" + ref.owner + "/" + ref.name;
  if (!source.empty()) {
    ref.source_papers.insert(source);
  }
  return ref;
}

std::vector<RepoRef> dedupe(const std::vector<RepoRef> &refs) {
  std::vector<RepoRef> out;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto &ref : refs) {
    auto [it, inserted] = index.try_emplace(ref.key(), out.size());
    if (inserted) {
      out.push_back(ref);
    } else {
      out[it->second].source_papers.insert(ref.source_papers.begin(),
                                           ref.source_papers.end());
    }
  }
  return out;
}

std::vector<RepoRef> find_repositories(std::string_view text, const std::string &source) {
  std::vector<RepoRef> refs;
  for (const auto &hit : extract_urls(text, source)) {
    try {
      refs.push_back(canonicalize(clean_url(hit.url_text), source));
    } catch (const std::invalid_argument &) {
      // Profile pages, bare host mentions and junk are not repositories.
    }
  }
  return refs;
}

} // namespace litrepo::links
