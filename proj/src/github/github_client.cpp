#include "github/github_client.hpp"

#include <charconv>
#include <unordered_set>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "common/errors.hpp"
#include "links/link_extractor.hpp"

namespace litrepo::github {

namespace {

using json = nlohmann::json;

std::optional<std::int64_t> parse_int(const std::optional<std::string> &text) {
  if (!text) {
    return std::nullopt;
  }
  std::int64_t value = 0;
  auto first = text->data();
  auto last = first + text->size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    return std::nullopt;
  }
  return value;
}

bool is_redirect(int status) {
  return status == 301 || status == 302 || status == 307 || status == 308;
}

bool is_rate_limited(const http::Response &r) {
  if (r.status == 429) {
    return true;
  }
  return r.status == 403 &&
         (r.header("x-ratelimit-remaining") == "0" || r.header("retry-after").has_value());
}

std::uint64_t count_field(const json &body, const char *field) {
  auto it = body.find(field);
  if (it == body.end() || !it->is_number_integer() || it->get<std::int64_t>() < 0) {
    throw FetchError(FailureKind::MalformedResponse,
                     fmt::format("response field '{}' missing or not a count", field));
  }
  return it->get<std::uint64_t>();
}

json parse_body(const std::string &body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error &e) {
    throw FetchError(FailureKind::MalformedResponse, std::string("unparseable body: ") + e.what());
  }
}

} // namespace

const char *to_string(FailureKind kind) {
  switch (kind) {
  case FailureKind::NotFound:
    return "not_found";
  case FailureKind::RateLimited:
    return "rate_limited";
  case FailureKind::Transport:
    return "transport";
  case FailureKind::MalformedResponse:
    return "malformed_response";
  case FailureKind::Forbidden:
    return "forbidden";
  }
  return "transport";
}

void ThrottlePolicy::validate() const {
  if (min_interval < Duration::zero()) {
    throw ValidationError("ThrottlePolicy: min_interval must be >= 0");
  }
  if (max_retries < 0) {
    throw ValidationError("ThrottlePolicy: max_retries must be >= 0");
  }
}

Client::Client(http::Transport &transport, Clock &clock, ThrottlePolicy policy,
               ClientOptions options)
    : transport_(transport), clock_(clock), policy_(policy), options_(std::move(options)),
      throttle_(clock, (policy.validate(), policy.min_interval)) {
  if (options_.contributors_per_page < 1 || options_.contributors_per_page > 100) {
    throw ValidationError("contributors_per_page must be in [1, 100]");
  }
}

std::string Client::repo_url(const RepoRef &ref) const {
  return fmt::format("{}/repos/{}/{}", options_.base_url, ref.owner, ref.name);
}

http::Response Client::send(const std::string &url) {
  std::vector<std::pair<std::string, std::string>> headers{
      {"Accept", "application/vnd.github+json"},
      {"User-Agent", "litrepo/1.0"},
      {"X-GitHub-Api-Version", "2022-11-28"}};
  if (!options_.token.empty()) {
    headers.emplace_back("Authorization", "Bearer " + options_.token);
  }

  auto backoff = options_.initial_backoff;
  for (int attempt = 0;; ++attempt) {
    const bool last_attempt = attempt >= policy_.max_retries;
    throttle_.acquire();
    ++requests_;

    http::Response response;
    try {
      response = transport_.get(url, headers);
    } catch (const HttpError &e) {
      if (last_attempt) {
        throw FetchError(FailureKind::Transport, e.what());
      }
      clock_.sleep_for(backoff);
      backoff *= 2;
      continue;
    }

    if (policy_.respect_server_hints && response.header("x-ratelimit-remaining") == "0") {
      if (auto reset = parse_int(response.header("x-ratelimit-reset"))) {
        throttle_.hold_until(TimePoint{std::chrono::seconds{*reset}});
      }
    }

    if ((response.status >= 200 && response.status < 300) || is_redirect(response.status)) {
      return response;
    }
    if (response.status == 404) {
      throw FetchError(FailureKind::NotFound, "HTTP 404 for " + url);
    }
    if (is_rate_limited(response)) {
      auto retry_after = parse_int(response.header("retry-after"));
      bool hinted = policy_.respect_server_hints && retry_after && *retry_after >= 0;
      if (hinted) {
        throttle_.hold_until(clock_.now() + std::chrono::seconds{*retry_after});
      }
      if (last_attempt) {
        throw FetchError(FailureKind::RateLimited,
                         fmt::format("HTTP {} rate limited for {}", response.status, url));
      }
      if (!hinted && (!policy_.respect_server_hints ||
                      !response.header("x-ratelimit-reset").has_value())) {
        clock_.sleep_for(backoff);
        backoff *= 2;
      }
      continue;
    }
    if (response.status == 401 || response.status == 403 || response.status == 451) {
      throw FetchError(FailureKind::Forbidden,
                       fmt::format("HTTP {} for {}", response.status, url));
    }
    if (response.status >= 500 && !last_attempt) {
      clock_.sleep_for(backoff);
      backoff *= 2;
      continue;
    }
    throw FetchError(FailureKind::Transport, fmt::format("HTTP {} for {}", response.status, url));
  }
}

http::Response Client::send_following_redirect(const std::string &url, bool &redirected) {
  auto response = send(url);
  redirected = false;
  if (!is_redirect(response.status)) {
    return response;
  }
  auto location = response.header("location");
  if (!location || location->empty()) {
    throw FetchError(FailureKind::MalformedResponse, "redirect without Location for " + url);
  }
  std::string target = *location;
  if (target.front() == '/') {
    target = http::split_url(url).origin + target;
  }
  response = send(target);
  if (is_redirect(response.status)) {
    throw FetchError(FailureKind::MalformedResponse, "repeated redirect for " + url);
  }
  redirected = true;
  return response;
}

RepoSnapshot Client::fetch_repo(const RepoRef &ref) {
  bool redirected = false;
  auto response = send_following_redirect(repo_url(ref), redirected);
  auto body = parse_body(response.body);
  if (!body.is_object()) {
    throw FetchError(FailureKind::MalformedResponse, "repository response is not an object");
  }

  RepoSnapshot snapshot;
  snapshot.ref = ref;
  auto &m = snapshot.metrics;
  auto name = body.find("name");
  if (name == body.end() || !name->is_string()) {
    throw FetchError(FailureKind::MalformedResponse, "response field 'name' missing");
  }
  m.name = name->get<std::string>();
  if (auto d = body.find("description"); d != body.end() && d->is_string()) {
    m.description = d->get<std::string>();
  }
  m.stars = count_field(body, "stargazers_count");
  m.forks = count_field(body, "forks_count");
  m.open_issues = count_field(body, "open_issues_count");
  m.fetched_at = clock_.now_seconds();

  if (redirected) {
    auto owner = body.find("owner");
    if (owner == body.end() || !owner->is_object() || !owner->contains("login") ||
        !(*owner)["login"].is_string()) {
      throw FetchError(FailureKind::MalformedResponse, "renamed repository lacks owner.login");
    }
    auto login = (*owner)["login"].get<std::string>();
    if (!links::valid_slug(login) || !links::valid_slug(m.name)) {
      throw FetchError(FailureKind::MalformedResponse, "renamed repository has invalid slug");
    }
    snapshot.ref.owner = login;
    snapshot.ref.name = m.name;
    snapshot.ref.canonical_url = "https://github.com/" + login + "/" + m.name;
  }
  return snapshot;
}

std::uint64_t Client::count_contributors(const RepoRef &ref) {
  std::string url = fmt::format("{}/contributors?per_page={}", repo_url(ref),
                                options_.contributors_per_page);
  if (options_.include_anonymous_contributors) {
    url += "&anon=1";
  }

  std::uint64_t total = 0;
  std::unordered_set<std::string> visited;
  while (true) {
    if (!visited.insert(url).second) {
      throw FetchError(FailureKind::MalformedResponse, "contributor pagination loops at " + url);
    }
    bool redirected = false;
    auto response = send_following_redirect(url, redirected);
    if (response.status == 204 || response.body.empty()) {
      break;
    }
    auto page = parse_body(response.body);
    if (!page.is_array()) {
      throw FetchError(FailureKind::MalformedResponse, "contributors response is not an array");
    }
    total += page.size();
    auto link = response.header("link");
    auto next = link ? http::next_link(*link) : std::nullopt;
    if (!next) {
      break;
    }
    url = *next;
  }
  return total;
}

EnrichResult Client::enrich(const std::vector<RepoRef> &refs) {
  EnrichResult result;
  for (const auto &ref : refs) {
    FetchFailure failure;
    failure.repo = ref;
    try {
      auto snapshot = fetch_repo(ref);
      snapshot.metrics.contributors = count_contributors(snapshot.ref);
      result.successes.push_back(std::move(snapshot));
      continue;
    } catch (const FetchError &e) {
      failure.kind = e.kind();
      failure.detail = e.what();
    } catch (const std::exception &e) {
      failure.kind = FailureKind::MalformedResponse;
      failure.detail = e.what();
    }
    failure.occurred_at = clock_.now_seconds();
    result.failures.push_back(std::move(failure));
  }
  return result;
}

} // namespace litrepo::github
