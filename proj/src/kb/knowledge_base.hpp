#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common/types.hpp"

namespace litrepo::kb {

inline constexpr int kSchemaVersion = 1;

struct KbEntry {
  RepoRef ref;
  RepoMetrics latest;
  MaturityTier tier = MaturityTier::Low;
  /// Earlier snapshots, oldest first, all strictly before latest.fetched_at.
  std::vector<RepoMetrics> history;
  Timestamp first_seen{};

  bool operator==(const KbEntry &) const = default;
};

/// Deduplicated repository entries keyed by case-insensitive owner/name.
class Store {
public:
  explicit Store(std::optional<std::size_t> history_cap = std::nullopt)
      : history_cap_(history_cap) {}

  /// Inserts a new repository or rolls an existing one forward.
  ///
  /// For an existing key the previous latest moves to history when the
  /// candidate is newer; an equal fetched_at overwrites latest in place; an
  /// older one is rejected. Source papers are merged, the stored URL casing
  /// is kept. `candidate.history` is ignored. A default first_seen takes the
  /// snapshot time.
  void upsert(const KbEntry &candidate);

  /// Recomputes every tier from its latest snapshot.
  void retier(const std::function<MaturityTier(const RepoMetrics &)> &classify);

  const KbEntry *find(const std::string &key) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Entries ordered by first_seen, then owner/name.
  std::vector<KbEntry> ordered() const;

  std::optional<std::size_t> history_cap() const { return history_cap_; }

  bool operator==(const Store &other) const { return entries_ == other.entries_; }

private:
  friend Store parse_records(std::string_view text, std::optional<std::size_t> history_cap);

  std::optional<std::size_t> history_cap_;
  std::map<std::string, KbEntry> entries_;
};

struct MetricChange {
  RepoRef ref;
  RepoMetrics before;
  RepoMetrics after;
};

/// Classification of every repository in either store. `removed` is only
/// non-empty when the newer store dropped an entry.
struct KbDiff {
  std::vector<RepoRef> added;
  std::vector<MetricChange> updated;
  std::vector<RepoRef> unchanged;
  std::vector<RepoRef> removed;
};

/// Compares latest snapshots: any differing engagement count means updated.
KbDiff diff(const Store &before, const Store &after);

std::string render_diff(const KbDiff &d);

/// The one-line human-readable summary of an entry.
std::string render_report_line(const KbEntry &entry);

enum class ExportFormat { Records, Table, Report };

/// Default file name for each format inside an output directory.
const char *default_file_name(ExportFormat format);

std::string serialize(const Store &store, ExportFormat format);

/// Inverse of serialize(store, Records). Throws StoreError with the
/// offending line number.
Store parse_records(std::string_view text, std::optional<std::size_t> history_cap = std::nullopt);

/// Writes serialize(store, format) to `path` via a temporary sibling and a
/// rename, so readers never see a partial file. Throws StoreError.
void export_store(const Store &store, ExportFormat format, const std::filesystem::path &path);

/// Loads a records file. Throws StoreError when missing or corrupt.
Store load(const std::filesystem::path &path,
           std::optional<std::size_t> history_cap = std::nullopt);

} // namespace litrepo::kb
