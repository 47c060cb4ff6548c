#pragma once

// Mock arXiv and GitHub services for tests. Each service answers a request
// target ("/path?query"); FakeTransport routes by origin in-process, and
// LoopbackServer exposes the same handler on 127.0.0.1 for end-to-end runs.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "arxiv/arxiv_client.hpp"
#include "common/clock.hpp"
#include "common/errors.hpp"
#include "common/types.hpp"
#include "http/transport.hpp"
#include "kb/knowledge_base.hpp"

namespace litrepo::testing {

using Handler = std::function<http::Response(const std::string &target)>;

struct RequestRecord {
  std::string url;
  TimePoint at;
};

/// Routes GETs to handlers keyed by origin and stamps each with clock time.
class FakeTransport final : public http::Transport {
public:
  explicit FakeTransport(Clock &clock) : clock_(clock) {}

  void route(const std::string &origin, Handler handler) { routes_[origin] = std::move(handler); }

  http::Response get(const std::string &url,
                     const std::vector<std::pair<std::string, std::string>> &headers) override;

  const std::vector<RequestRecord> &trace() const { return trace_; }
  std::vector<RequestRecord> trace_for(const std::string &origin) const;
  /// Request headers of the most recent request.
  const std::vector<std::pair<std::string, std::string>> &last_headers() const {
    return last_headers_;
  }

private:
  Clock &clock_;
  std::map<std::string, Handler> routes_;
  std::vector<RequestRecord> trace_;
  std::vector<std::pair<std::string, std::string>> last_headers_;
};

std::map<std::string, std::string> query_params(const std::string &target);
std::string target_path(const std::string &target);

/// Serves a fixed list of papers honoring start/max_results.
class MockArxiv {
public:
  std::vector<PaperRecord> papers;
  bool report_total = true;
  /// Statuses returned (in order) before normal service resumes.
  std::vector<int> failures_first;
  std::size_t requests = 0;

  http::Response handle(const std::string &target);
};

struct MockRepo {
  std::string owner;
  std::string name;
  std::optional<std::string> description;
  std::uint64_t stars = 0;
  std::uint64_t forks = 0;
  std::uint64_t open_issues = 0;
  /// Contributor page sizes; empty vector means the endpoint answers 204.
  std::vector<std::size_t> contributor_pages;
  /// Non-200 status for the repository endpoint.
  int status = 200;
  /// Status for the n-th contributor page (0-based), to fail mid-pagination.
  std::optional<std::pair<std::size_t, int>> contributor_failure;
  /// Serve a rename redirect to this (owner, name).
  std::optional<std::pair<std::string, std::string>> moved_to;
};

/// Contributor pages that add up to `n` at 100 per page.
std::vector<std::size_t> pages_for(std::uint64_t n);

class MockGithub {
public:
  explicit MockGithub(std::string origin) : origin_(std::move(origin)) {}

  void add(MockRepo repo);
  MockRepo *find(const std::string &owner, const std::string &name);

  /// Answer the next `count` requests with 403 + quota headers and a
  /// Retry-After of `retry_after_s` seconds.
  void rate_limit_next(int count, int retry_after_s);

  http::Response handle(const std::string &target);

  const std::string &origin() const { return origin_; }
  void set_origin(std::string origin) { origin_ = std::move(origin); }

private:
  http::Response repo_response(const MockRepo &repo) const;

  std::string origin_;
  std::map<std::string, MockRepo> repos_;
  std::map<std::string, std::string> moved_ids_;
  int rate_limited_remaining_ = 0;
  int retry_after_s_ = 0;
};

/// HTTP server on an ephemeral loopback port running a Handler.
class LoopbackServer {
public:
  explicit LoopbackServer(Handler handler);
  ~LoopbackServer();
  LoopbackServer(const LoopbackServer &) = delete;
  LoopbackServer &operator=(const LoopbackServer &) = delete;

  std::string origin() const;
  std::size_t requests() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// The 31 reference URLs turned into mock repositories: the 23 with
/// reference counts, the rest absent (404).
void load_reference_repos(MockGithub &github);

/// Papers whose abstracts mention `urls`, one URL per paper, with prose
/// around each and trailing punctuation.
std::vector<PaperRecord> papers_mentioning(const std::vector<std::string> &urls);

/// Up to 24 entries with valid random slugs, 1-4 snapshots each, and
/// descriptions that exercise JSON and CSV escaping.
kb::Store random_store(std::mt19937_64 &rng);

} // namespace litrepo::testing
