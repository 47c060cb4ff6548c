#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "arxiv/arxiv_client.hpp"
#include "common/clock.hpp"
#include "github/github_client.hpp"
#include "http/transport.hpp"
#include "kb/knowledge_base.hpp"
#include "maturity/maturity.hpp"
#include "maturity/reference_data.hpp"

namespace litrepo::pipeline {

inline constexpr std::size_t kDefaultPageSize = 100;
inline constexpr Duration kAnonymousInterval{720};
inline constexpr Duration kAuthenticatedInterval{100};

struct RunConfig {
  arxiv::SearchSpec search;
  /// Unset: min(kDefaultPageSize, max_results).
  std::optional<std::size_t> page_size;
  Duration arxiv_delay{3000};
  /// Unset: 720 ms anonymous, 100 ms with a token.
  std::optional<Duration> github_min_interval;
  int max_retries = 3;
  bool respect_server_hints = true;
  maturity::TierRule rule;
  std::filesystem::path out_dir = ".";
  std::string arxiv_base_url = arxiv::kDefaultBaseUrl;
  std::string github_base_url = github::kDefaultBaseUrl;
  bool normalize_dates = false;
  /// Stages always run one after another; kept for command-line parity.
  bool serial = true;
  std::string token_env = "GITHUB_TOKEN";
  bool include_anonymous_contributors = false;
  std::optional<std::size_t> history_cap;
  int verbosity = 1;
  /// Start of a virtual clock; set for reproducible runs.
  std::optional<Timestamp> fixed_clock;

  /// search with page_size resolved.
  arxiv::SearchSpec effective_search() const;
  void validate() const;
};

/// Destination for user-facing text.
struct Output {
  std::function<void(std::string_view)> out = [](std::string_view) {};
  std::function<void(std::string_view)> err = [](std::string_view) {};
};

struct RunSummary {
  std::size_t papers = 0;
  std::size_t repositories = 0;
  std::size_t enriched = 0;
  std::size_t failed = 0;
};

/// The arXiv stage failed for good; nothing was persisted.
class FatalError : public std::runtime_error {
public:
  FatalError(const std::string &what, bool malformed_feed)
      : std::runtime_error(what), malformed_feed_(malformed_feed) {}
  bool malformed_feed() const noexcept { return malformed_feed_; }

private:
  bool malformed_feed_;
};

/// Runs the stages with caller-supplied transport and clock.
class Pipeline {
public:
  Pipeline(RunConfig config, http::Transport &transport, Clock &clock, Output output);

  /// Search, extract, enrich, classify and upsert into `store`, then write
  /// the three export files into out_dir. Per-repository failures are
  /// reported and never fatal.
  RunSummary run(kb::Store &store);

  /// run() on top of the store at `previous`, then report the difference.
  kb::KbDiff monitor(const std::filesystem::path &previous);

  const RunConfig &config() const { return config_; }

private:
  void write_exports(const kb::Store &store);

  RunConfig config_;
  http::Transport &transport_;
  Clock &clock_;
  Output output_;
};

/// Default transport, real or virtual clock per config.
RunSummary run(const RunConfig &config, const Output &output);
kb::KbDiff monitor(const RunConfig &config, const std::filesystem::path &previous,
                   const Output &output);

/// Classifies and renders each reference row with `rule`; true iff every
/// tier and every line matches.
bool selfcheck(const maturity::TierRule &rule, std::span<const maturity::ReferenceRow> rows,
               const Output &output);

/// "['a', 'b']"
std::string format_url_list(const std::vector<RepoRef> &refs);

} // namespace litrepo::pipeline
