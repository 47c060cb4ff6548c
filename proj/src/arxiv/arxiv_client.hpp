#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "common/clock.hpp"
#include "common/types.hpp"
#include "http/transport.hpp"

namespace litrepo::arxiv {

inline constexpr const char *kDefaultBaseUrl = "https://export.arxiv.org/api/query";

/// Parameters of one literature search.
struct SearchSpec {
  std::vector<std::string> terms{"clinical informatics", "healthcare data analytics",
                                 "electronic health records",
                                 "medical software development"};
  int date_from = 2019;
  int date_to = 2024;
  std::size_t max_results = 1000;
  std::size_t page_size = 100;

  /// Throws ValidationError naming the first violated invariant.
  void validate() const;
};

/// `ti:T1 OR abs:T1 OR ... AND submittedDate:[FROM TO TO]`
std::string build_query(const SearchSpec &spec);

/// Rewrites a `submittedDate:[YYYY TO YYYY]` range into the timestamp form
/// the live API accepts (`[YYYY01010000 TO YYYY12312359]`). Other text is
/// left untouched.
std::string normalize_dates(const std::string &query);

/// One parsed feed response.
struct FeedPage {
  std::vector<PaperRecord> entries;
  /// opensearch:totalResults when the feed carries it.
  std::optional<std::size_t> total_results;
};

/// Parses an arXiv Atom response. Throws ParseError (with the entry index
/// when one entry is at fault) on malformed input, and HttpError(400) when
/// the feed is an API error report.
FeedPage parse_feed(const std::string &xml);

/// Renders records as an arXiv-shaped Atom feed; parse_feed inverts it for
/// id, title, abstract and submitted date.
std::string write_feed(const std::vector<PaperRecord> &records,
                       std::optional<std::size_t> total_results = std::nullopt);

struct ClientOptions {
  std::string base_url = kDefaultBaseUrl;
  Duration politeness_delay{3000};
  int max_attempts = 3;
  Duration initial_backoff{1000};
  bool normalize_dates = false;
};

/// Paged arXiv search client. Requests never overlap and are spaced by the
/// politeness delay.
class Client {
public:
  Client(http::Transport &transport, Clock &clock, ClientOptions options = {});

  /// One request: `start` offset, up to `page_size` entries, feed order.
  FeedPage fetch_page(const std::string &query, std::size_t start, std::size_t page_size);

  using Sink = std::function<void(const PaperRecord &, std::size_t expected_total)>;

  /// Streams up to spec.max_results records into `sink` in retrieval order
  /// and returns how many were delivered. Retries transport/5xx failures
  /// with doubling backoff; errors escape once the budget is spent, after
  /// whatever was already delivered.
  std::size_t iterate_papers(const SearchSpec &spec, const Sink &sink);

  std::size_t requests_issued() const { return requests_; }

private:
  FeedPage fetch_with_retry(const std::string &query, std::size_t start,
                            std::size_t page_size);

  http::Transport &transport_;
  ClientOptions options_;
  Throttle throttle_;
  std::size_t requests_ = 0;
};

} // namespace litrepo::arxiv
