#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <set>
#include <string>

namespace litrepo {

/// UTC wall time at second precision; the unit persisted in the knowledge base.
using Timestamp = std::chrono::sys_seconds;

/// One arXiv search hit.
struct PaperRecord {
  std::string arxiv_id;
  std::string title;
  std::string abstract;
  std::chrono::year_month_day submitted{};

  bool operator==(const PaperRecord &) const = default;
};

/// Canonical repository identity plus the papers it was found in.
///
/// Identity is case-insensitive on (owner, name); canonical_url keeps the
/// casing of the first sighting.
struct RepoRef {
  std::string owner;
  std::string name;
  std::string canonical_url;
  std::set<std::string> source_papers;

  /// Lowercased "owner/name", the dedup key.
  std::string key() const;

  bool operator==(const RepoRef &) const = default;
};

/// Snapshot of a repository's engagement counts.
struct RepoMetrics {
  std::string name;
  std::optional<std::string> description;
  std::uint64_t stars = 0;
  std::uint64_t forks = 0;
  std::uint64_t open_issues = 0;
  std::uint64_t contributors = 0;
  Timestamp fetched_at{};

  bool operator==(const RepoMetrics &) const = default;

  /// True when the four engagement counts match.
  bool same_counts(const RepoMetrics &other) const {
    return stars == other.stars && forks == other.forks &&
           open_issues == other.open_issues &&
           contributors == other.contributors;
  }
};

enum class MaturityTier { Low = 0, Medium = 1, High = 2 };

const char *to_string(MaturityTier tier);
std::optional<MaturityTier> parse_tier(std::string_view text);

/// ASCII lowercase copy.
std::string to_lower(std::string_view text);

/// "2024-03-01T12:00:00Z"
std::string format_timestamp(Timestamp ts);
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// "2024-03-01"
std::string format_date(std::chrono::year_month_day date);
std::optional<std::chrono::year_month_day> parse_date(std::string_view text);

} // namespace litrepo
