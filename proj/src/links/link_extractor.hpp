#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "common/types.hpp"

namespace litrepo::links {

/// A GitHub URL as it appeared in the text, trailing punctuation included.
struct RawUrlHit {
  std::string url_text;
  std::string source_paper;

  bool operator==(const RawUrlHit &) const = default;
};

/// URL points at github.com but not at a repository (profile page, bare host).
class NotARepositoryError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// URL is not a well-formed GitHub repository URL (empty or illegal slug,
/// wrong host).
class MalformedUrlError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Characters stripped from the right end of a hit.
inline constexpr std::string_view kTrailingJunk = ".,;:!?)]}'\"";

/// All non-overlapping GitHub URL matches in document order.
std::vector<RawUrlHit> extract_urls(std::string_view text, const std::string &source);

/// Strips trailing prose punctuation until none remains. Idempotent.
std::string clean_url(std::string_view url);

/// Reduces a cleaned URL to https://github.com/{owner}/{name}.
RepoRef canonicalize(std::string_view cleaned, const std::string &source);

/// Merges case-insensitive duplicates, keeping first-seen order and casing
/// and uniting source papers.
std::vector<RepoRef> dedupe(const std::vector<RepoRef> &refs);

/// True if `slug` is a legal GitHub owner or repository name.
bool valid_slug(std::string_view slug);

/// extract -> clean -> canonicalize over one text; hits that are not
/// repositories are dropped. The result is not deduplicated.
std::vector<RepoRef> find_repositories(std::string_view text, const std::string &source);

} // namespace litrepo::links
