#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "common/clock.hpp"
#include "common/types.hpp"
#include "http/transport.hpp"

namespace litrepo::github {

inline constexpr const char *kDefaultBaseUrl = "https://api.github.com";

enum class FailureKind { NotFound, RateLimited, Transport, MalformedResponse, Forbidden };

const char *to_string(FailureKind kind);

/// Why one repository could not be enriched. Recorded, never thrown past
/// enrich().
struct FetchFailure {
  RepoRef repo;
  FailureKind kind = FailureKind::Transport;
  std::string detail;
  Timestamp occurred_at{};
};

/// Thrown by the single-repository calls; enrich() turns it into data.
class FetchError : public std::runtime_error {
public:
  FetchError(FailureKind kind, const std::string &detail)
      : std::runtime_error(detail), kind_(kind) {}
  FailureKind kind() const noexcept { return kind_; }

private:
  FailureKind kind_;
};

struct ThrottlePolicy {
  Duration min_interval{720};
  int max_retries = 3;
  /// Honor Retry-After and X-RateLimit-Remaining/Reset response headers.
  bool respect_server_hints = true;

  void validate() const;
};

struct ClientOptions {
  std::string base_url = kDefaultBaseUrl;
  /// Bearer token; unauthenticated when empty.
  std::string token;
  bool include_anonymous_contributors = false;
  int contributors_per_page = 100;
  Duration initial_backoff{1000};
};

/// Repository metrics together with the identity they were fetched under;
/// the identity differs from the request when GitHub reports a rename.
struct RepoSnapshot {
  RepoRef ref;
  RepoMetrics metrics;
};

struct EnrichResult {
  std::vector<RepoSnapshot> successes;
  std::vector<FetchFailure> failures;
};

class Client {
public:
  Client(http::Transport &transport, Clock &clock, ThrottlePolicy policy,
         ClientOptions options = {});

  /// GET /repos/{owner}/{name}. Contributors are left at 0. Follows one
  /// rename redirect. Throws FetchError.
  RepoSnapshot fetch_repo(const RepoRef &ref);

  /// Walks /repos/{owner}/{name}/contributors through Link rel="next" and
  /// returns the number of entries seen. Throws FetchError; a failure on any
  /// page discards the partial count.
  std::uint64_t count_contributors(const RepoRef &ref);

  /// fetch_repo + count_contributors for each ref, in order. Every ref ends
  /// up in exactly one of the two lists.
  EnrichResult enrich(const std::vector<RepoRef> &refs);

  std::size_t requests_issued() const { return requests_; }

private:
  http::Response send(const std::string &url);
  http::Response send_following_redirect(const std::string &url, bool &redirected);
  std::string repo_url(const RepoRef &ref) const;

  http::Transport &transport_;
  Clock &clock_;
  ThrottlePolicy policy_;
  ClientOptions options_;
  Throttle throttle_;
  std::size_t requests_ = 0;
};

} // namespace litrepo::github
