#include "arxiv/arxiv_client.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>
#include <unordered_set>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>

#include "common/errors.hpp"

namespace litrepo::arxiv {

namespace {

namespace pt = boost::property_tree;

std::string_view trim(std::string_view text) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!text.empty() && is_space(text.front())) {
    text.remove_prefix(1);
  }
  while (!text.empty() && is_space(text.back())) {
    text.remove_suffix(1);
  }
  return text;
}

std::string_view local_name(std::string_view element) {
  auto colon = element.rfind(':');
  return colon == std::string_view::npos ? element : element.substr(colon + 1);
}

const pt::ptree *find_child(const pt::ptree &node, std::string_view name) {
  for (const auto &[key, child] : node) {
    if (local_name(key) == name) {
      return &child;
    }
  }
  return nullptr;
}

std::string strip_abs_prefix(std::string_view id) {
  for (std::string_view prefix : {"http://arxiv.org/abs/", "https://arxiv.org/abs/"}) {
    if (id.substr(0, prefix.size()) == prefix) {
      return std::string(id.substr(prefix.size()));
    }
  }
  return std::string(id);
}

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out.push_back(c);
    }
  }
  return out;
}

bool is_blank(const std::string &s) { return trim(s).empty(); }

} // namespace

void SearchSpec::validate() const {
  if (terms.empty()) {
    throw ValidationError("SearchSpec: terms must be non-empty");
  }
  for (const auto &term : terms) {
    if (is_blank(term)) {
      throw ValidationError("SearchSpec: every term must be non-empty after trimming");
    }
  }
  if (date_from > date_to) {
    throw ValidationError("SearchSpec: date_from must be <= date_to");
  }
  if (max_results < 1) {
    throw ValidationError("SearchSpec: max_results must be >= 1");
  }
  if (page_size < 1 || page_size > max_results) {
    throw ValidationError("SearchSpec: page_size must satisfy 1 <= page_size <= max_results");
  }
}

std::string build_query(const SearchSpec &spec) {
  spec.validate();
  std::string query;
  for (const auto &raw : spec.terms) {
    auto term = trim(raw);
    if (!query.empty()) {
      query += " OR ";
    }
    query += fmt::format("ti:{0} OR abs:{0}", term);
  }
  query += fmt::format(" AND submittedDate:[{} TO {}]", spec.date_from, spec.date_to);
  return query;
}

std::string normalize_dates(const std::string &query) {
  static const std::regex range(R"(submittedDate:\[(\d{4}) TO (\d{4})\])");
  return std::regex_replace(query, range, "submittedDate:[$0101010000 TO $0212312359]");
}

FeedPage parse_feed(const std::string &xml) {
  pt::ptree doc;
  try {
    std::istringstream in(xml);
    pt::read_xml(in, doc);
  } catch (const pt::xml_parser_error &e) {
    throw ParseError(std::string("malformed Atom feed: ") + e.what());
  }
  const pt::ptree *feed = find_child(doc, "feed");
  if (feed == nullptr) {
    throw ParseError("Atom document has no <feed> element");
  }

  FeedPage page;
  if (const auto *total = find_child(*feed, "totalResults")) {
    try {
      page.total_results = std::stoull(std::string(trim(total->data())));
    } catch (const std::exception &) {
      throw ParseError("unparseable totalResults: " + total->data());
    }
  }

  int index = 0;
  for (const auto &[key, entry] : *feed) {
    if (local_name(key) != "entry") {
      continue;
    }
    const auto *id = find_child(entry, "id");
    if (id == nullptr || is_blank(id->data())) {
      throw ParseError(fmt::format("feed entry {} has no id", index), index);
    }
    auto id_text = std::string(trim(id->data()));
    if (id_text.find("/api/errors") != std::string::npos) {
      const auto *summary = find_child(entry, "summary");
      throw HttpError("arXiv API error: " +
                          (summary ? std::string(trim(summary->data())) : id_text),
                      400, false);
    }
    const auto *published = find_child(entry, "published");
    auto date = published ? parse_date(trim(published->data())) : std::nullopt;
    if (!date) {
      throw ParseError(fmt::format("feed entry {} has no valid published date", index), index);
    }
    PaperRecord record;
    record.arxiv_id = strip_abs_prefix(id_text);
    if (const auto *title = find_child(entry, "title")) {
      record.title = std::string(trim(title->data()));
    }
    if (const auto *summary = find_child(entry, "summary")) {
      record.abstract = std::string(trim(summary->data()));
    }
    record.submitted = *date;
    page.entries.push_back(std::move(record));
    ++index;
  }
  return page;
}

std::string write_feed(const std::vector<PaperRecord> &records,
                       std::optional<std::size_t> total_results) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
                    "<feed xmlns=\"http://www.w3.org/2005/Atom\" "
                    "xmlns:opensearch=\"http://a9.com/-/spec/opensearch/1.1/\">\n"
                    "  <title type=\"html\">ArXiv Query</title>\n";
  if (total_results) {
    out += fmt::format("  <opensearch:totalResults>{}</opensearch:totalResults>\n",
                       *total_results);
  }
  for (const auto &r : records) {
    auto date = format_date(r.submitted);
    out += fmt::format("  <entry>\n"
                       "    <id>http://arxiv.org/abs/{}</id>\n"
                       "    <updated>{}T00:00:00Z</updated>\n"
                       "    <published>{}T00:00:00Z</published>\n"
                       "    <title>{}</title>\n"
                       "    <summary>{}</summary>\n"
                       "  </entry>\n",
                       xml_escape(r.arxiv_id), date, date, xml_escape(r.title),
                       xml_escape(r.abstract));
  }
  out += "</feed>\n";
  return out;
}

Client::Client(http::Transport &transport, Clock &clock, ClientOptions options)
    : transport_(transport), options_(std::move(options)),
      throttle_(clock, options_.politeness_delay) {
  if (options_.max_attempts < 1) {
    throw ValidationError("arXiv client: max_attempts must be >= 1");
  }
}

FeedPage Client::fetch_page(const std::string &query, std::size_t start,
                            std::size_t page_size) {
  if (page_size < 1) {
    throw ValidationError("fetch_page: page_size must be >= 1");
  }
  auto effective = options_.normalize_dates ? normalize_dates(query) : query;
  auto url = fmt::format("{}?search_query={}&start={}&max_results={}", options_.base_url,
                         http::url_encode(effective), start, page_size);

  throttle_.acquire();
  ++requests_;
  auto response = transport_.get(url, {{"User-Agent", "litrepo/1.0"}});
  if (response.status < 200 || response.status >= 300) {
    throw HttpError(fmt::format("arXiv request failed with HTTP {}", response.status),
                    response.status, response.status >= 500 || response.status == 429);
  }
  auto page = parse_feed(response.body);
  if (page.entries.size() > page_size) {
    page.entries.resize(page_size);
  }
  return page;
}

FeedPage Client::fetch_with_retry(const std::string &query, std::size_t start,
                                  std::size_t page_size) {
  auto backoff = options_.initial_backoff;
  for (int attempt = 1;; ++attempt) {
    try {
      return fetch_page(query, start, page_size);
    } catch (const HttpError &e) {
      if (!e.retryable() || attempt >= options_.max_attempts) {
        throw;
      }
    }
    throttle_.clock().sleep_for(backoff);
    backoff *= 2;
  }
}

std::size_t Client::iterate_papers(const SearchSpec &spec, const Sink &sink) {
  auto query = build_query(spec);
  std::unordered_set<std::string> seen;
  std::size_t delivered = 0;
  std::size_t start = 0;
  std::size_t expected = spec.max_results;

  while (delivered < spec.max_results) {
    auto want = std::min(spec.page_size, spec.max_results - delivered);
    auto page = fetch_with_retry(query, start, want);
    if (page.total_results) {
      expected = std::min(spec.max_results, *page.total_results);
    }
    for (auto &record : page.entries) {
      if (delivered >= spec.max_results) {
        break;
      }
      if (!seen.insert(record.arxiv_id).second) {
        continue;
      }
      ++delivered;
      sink(record, std::max(expected, delivered));
    }
    if (page.entries.size() < want) {
      break;
    }
    start += page.entries.size();
  }
  return delivered;
}

} // namespace litrepo::arxiv
