#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "arxiv/arxiv_client.hpp"
#include "common/errors.hpp"
#include "support/mocks.hpp"

using namespace litrepo;
using namespace litrepo::arxiv;
using namespace std::chrono_literals;
using litrepo::testing::FakeTransport;
using litrepo::testing::MockArxiv;

namespace {

std::string read_fixture(const std::string &name) {
  std::ifstream in(std::string(LITREPO_FIXTURE_DIR) + "/" + name);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const std::string kOrigin = "http://arxiv.test";

std::vector<PaperRecord> numbered_papers(std::size_t n) {
  std::vector<PaperRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({"2001." + std::to_string(10000 + i), "Title " + std::to_string(i),
                   "Abstract " + std::to_string(i), std::chrono::year{2020} / 5 / 1});
  }
  return out;
}

struct Harness {
  FakeClock clock;
  FakeTransport transport{clock};
  MockArxiv arxiv;
  ClientOptions options;

  Harness() {
    options.base_url = kOrigin + "/api/query";
    options.politeness_delay = 0ms;
    transport.route(kOrigin, [this](const std::string &t) { return arxiv.handle(t); });
  }
  Client client() { return Client(transport, clock, options); }
};

} // namespace

TEST_CASE("default query reproduces the reference search string") {
  SearchSpec spec;
  CHECK(build_query(spec) ==
        "ti:clinical informatics OR abs:clinical informatics OR ti:healthcare data analytics "
        "OR abs:healthcare data analytics OR ti:electronic health records OR abs:electronic "
        "health records OR ti:medical software development OR abs:medical software "
        "development AND submittedDate:[2019 TO 2024]");
  CHECK(spec.max_results == 1000);
}

TEST_CASE("single term query") {
  SearchSpec spec;
  spec.terms = {"x"};
  CHECK(build_query(spec) == "ti:x OR abs:x AND submittedDate:[2019 TO 2024]");
}

TEST_CASE("invalid search specs name the violated invariant") {
  SearchSpec spec;
  spec.terms = {};
  CHECK_THROWS_WITH_AS(build_query(spec), doctest::Contains("terms must be non-empty"),
                       ValidationError);
  spec.terms = {"ok", "   "};
  CHECK_THROWS_WITH_AS(build_query(spec), doctest::Contains("after trimming"), ValidationError);
  spec = {};
  spec.date_from = 2025;
  CHECK_THROWS_WITH_AS(build_query(spec), doctest::Contains("date_from"), ValidationError);
  spec = {};
  spec.max_results = 0;
  CHECK_THROWS_AS(build_query(spec), ValidationError);
  spec = {};
  spec.page_size = 0;
  CHECK_THROWS_WITH_AS(build_query(spec), doctest::Contains("page_size"), ValidationError);
  spec = {};
  spec.max_results = 50;
  CHECK_THROWS_WITH_AS(build_query(spec), doctest::Contains("page_size"), ValidationError);
}

TEST_CASE("query has 2 clauses per term and one date range") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    SearchSpec spec;
    spec.terms.clear();
    int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      spec.terms.push_back("term" + std::to_string(rng() % 1000) + " words");
    }
    auto q = build_query(spec);
    std::size_t ti = 0, abs = 0, range = 0;
    for (std::size_t p = 0; (p = q.find("ti:", p)) != std::string::npos; ++p) {
      ++ti;
    }
    for (std::size_t p = 0; (p = q.find("abs:", p)) != std::string::npos; ++p) {
      ++abs;
    }
    for (std::size_t p = 0; (p = q.find("submittedDate:[", p)) != std::string::npos; ++p) {
      ++range;
    }
    CHECK(ti == static_cast<std::size_t>(n));
    CHECK(abs == static_cast<std::size_t>(n));
    CHECK(range == 1);
    CHECK(build_query(spec) == q);
  }
}

TEST_CASE("normalize_dates rewrites only the date range") {
  CHECK(normalize_dates("ti:x OR abs:x AND submittedDate:[2019 TO 2024]") ==
        "ti:x OR abs:x AND submittedDate:[201901010000 TO 202412312359]");
  CHECK(normalize_dates("ti:x") == "ti:x");
}

TEST_CASE("recorded three-entry feed parses to the hand-listed records") {
  auto page = parse_feed(read_fixture("arxiv_three_entries.xml"));
  REQUIRE(page.entries.size() == 3);
  CHECK(page.total_results == 3u);

  const std::vector<PaperRecord> expected{
      {"1810.09302v6", "BioSentVec: creating sentence embeddings for biomedical texts",
       "Sentence embeddings have become an essential part of today's natural\nlanguage "
       "processing (NLP) systems. The embeddings are publicly available at\n"
       "https://github.com/ncbi-nlp/BioSentVec.",
       std::chrono::year{2018} / 10 / 22},
      {"2201.11838v3",
       "Clinical-Longformer and Clinical-BigBird: Transformers for long clinical\n  sequences",
       "Transformers-based models, such as BERT, have dramatically improved the\nperformance "
       "for various natural language processing tasks & more. Models are\nat "
       "https://github.com/luoyuanlab/Clinical-Longformer, with data.",
       std::chrono::year{2022} / 1 / 27},
      {"2306.00001v1", "A study without code", "No repository is mentioned in this abstract.",
       std::chrono::year{2023} / 6 / 1}};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CAPTURE(i);
    CHECK(page.entries[i] == expected[i]);
  }
}

TEST_CASE("empty feed yields no records") {
  auto page = parse_feed(read_fixture("arxiv_empty.xml"));
  CHECK(page.entries.empty());
  CHECK(page.total_results == 0u);
}

TEST_CASE("API error feed becomes a non-retryable HTTP error") {
  try {
    parse_feed(read_fixture("arxiv_error.xml"));
    FAIL("expected HttpError");
  } catch (const HttpError &e) {
    CHECK(e.status() == 400);
    CHECK_FALSE(e.retryable());
    CHECK(std::string(e.what()).find("incorrect id format") != std::string::npos);
  }
}

TEST_CASE("malformed feeds report the offending entry") {
  CHECK_THROWS_AS(parse_feed("<feed><entry>"), ParseError);
  CHECK_THROWS_AS(parse_feed("<html></html>"), ParseError);

  const std::string missing_date =
      "<feed xmlns=\"http://www.w3.org/2005/Atom\">"
      "<entry><id>http://arxiv.org/abs/1</id><published>2020-01-01T00:00:00Z</published></entry>"
      "<entry><id>http://arxiv.org/abs/2</id><title>t</title></entry></feed>";
  try {
    parse_feed(missing_date);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.entry_index() == 1);
  }
  const std::string missing_id =
      "<feed><entry><title>t</title><published>2020-01-01T00:00:00Z</published></entry></feed>";
  try {
    parse_feed(missing_id);
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    CHECK(e.entry_index() == 0);
  }
}

TEST_CASE("write_feed then parse_feed is lossless") {
  std::mt19937 rng(3);
  const std::string alphabet =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .,;:/<>&\"'()-_\n";
  auto text = [&](std::size_t max_len) {
    std::string s;
    auto len = 1 + rng() % max_len;
    for (std::size_t i = 0; i < len; ++i) {
      s.push_back(alphabet[rng() % alphabet.size()]);
    }
    // Surrounding whitespace is not significant in the feed.
    auto first = s.find_first_not_of(" \n");
    auto last = s.find_last_not_of(" \n");
    return first == std::string::npos ? std::string("x") : s.substr(first, last - first + 1);
  };
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PaperRecord> records;
    auto n = rng() % 6;
    for (std::size_t i = 0; i < n; ++i) {
      records.push_back({std::to_string(2000 + trial) + "." + std::to_string(i) + "v1",
                         text(60), text(400),
                         std::chrono::year{1995 + static_cast<int>(rng() % 30)} /
                             static_cast<unsigned>(1 + rng() % 12) /
                             static_cast<unsigned>(1 + rng() % 28)});
    }
    auto page = parse_feed(write_feed(records, records.size()));
    CHECK(page.entries == records);
  }
}

TEST_CASE("fetch_page rejects a zero page size") {
  Harness h;
  auto client = h.client();
  CHECK_THROWS_AS(client.fetch_page("q", 0, 0), ValidationError);
  CHECK(h.transport.trace().empty());
}

TEST_CASE("fetch_page sends query, offset and size") {
  Harness h;
  h.arxiv.papers = numbered_papers(3);
  auto client = h.client();
  auto page = client.fetch_page("ti:x OR abs:x AND submittedDate:[2019 TO 2024]", 1, 5);
  CHECK(page.entries.size() == 2);
  REQUIRE(h.transport.trace().size() == 1);
  CHECK(h.transport.trace()[0].url ==
        kOrigin + "/api/query?search_query=ti%3Ax%20OR%20abs%3Ax%20AND%20submittedDate%3A%5B2019"
                  "%20TO%202024%5D&start=1&max_results=5");
}

TEST_CASE("fetch_page with normalized dates sends the timestamp range") {
  Harness h;
  h.options.normalize_dates = true;
  auto client = h.client();
  client.fetch_page("ti:x AND submittedDate:[2019 TO 2024]", 0, 1);
  CHECK(h.transport.trace()[0].url.find("201901010000%20TO%20202412312359") !=
        std::string::npos);
}

TEST_CASE("fetch_page non-success is an error carrying the status") {
  Harness h;
  h.arxiv.failures_first = {503};
  auto client = h.client();
  try {
    client.fetch_page("q", 0, 10);
    FAIL("expected HttpError");
  } catch (const HttpError &e) {
    CHECK(e.status() == 503);
    CHECK(e.retryable());
  }
}

TEST_CASE("five papers in pages of two take three requests") {
  Harness h;
  h.arxiv.papers = numbered_papers(5);
  auto client = h.client();
  SearchSpec spec;
  spec.page_size = 2;
  std::vector<PaperRecord> got;
  auto n = client.iterate_papers(spec, [&](const PaperRecord &p, std::size_t) { got.push_back(p); });
  CHECK(n == 5);
  CHECK(got == h.arxiv.papers);
  CHECK(h.arxiv.requests == 3);
}

TEST_CASE("max_results caps the stream and the requests") {
  Harness h;
  h.arxiv.papers = numbered_papers(5);
  auto client = h.client();
  SearchSpec spec;
  spec.max_results = 3;
  spec.page_size = 2;
  std::vector<std::string> ids;
  std::size_t last_expected = 0;
  client.iterate_papers(spec, [&](const PaperRecord &p, std::size_t expected) {
    ids.push_back(p.arxiv_id);
    last_expected = expected;
  });
  CHECK(ids.size() == 3);
  CHECK(last_expected == 3);
  CHECK(h.arxiv.requests == 2);
  auto params = litrepo::testing::query_params(h.transport.trace().back().url.substr(
      h.transport.trace().back().url.find('/', 8)));
  CHECK(params["start"] == "2");
  CHECK(params["max_results"] == "1");
}

TEST_CASE("empty search result is an empty stream") {
  Harness h;
  auto client = h.client();
  SearchSpec spec;
  auto n = client.iterate_papers(spec, [](const PaperRecord &, std::size_t) { FAIL("no records"); });
  CHECK(n == 0);
  CHECK(h.arxiv.requests == 1);
}

TEST_CASE("cap is never exceeded for random feed sizes") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Harness h;
    h.arxiv.papers = numbered_papers(rng() % 40);
    h.arxiv.report_total = rng() % 2 == 0;
    SearchSpec spec;
    spec.max_results = 1 + rng() % 30;
    spec.page_size = 1 + rng() % spec.max_results;
    auto client = h.client();
    std::size_t seen = 0;
    client.iterate_papers(spec, [&](const PaperRecord &, std::size_t expected) {
      ++seen;
      CHECK(seen <= expected);
      CHECK(expected <= spec.max_results);
    });
    auto want = std::min(spec.max_results, h.arxiv.papers.size());
    CHECK(seen == want);
    // One request per full page, plus one short page unless the cap was hit exactly.
    auto pages = (want + spec.page_size - 1) / spec.page_size;
    bool cap_reached = want == spec.max_results;
    bool last_full = want % spec.page_size == 0;
    CHECK(h.arxiv.requests == pages + ((cap_reached || !last_full) ? 0 : 1));
  }
}

TEST_CASE("politeness delay separates consecutive requests") {
  Harness h;
  h.options.politeness_delay = 3000ms;
  h.arxiv.papers = numbered_papers(9);
  SearchSpec spec;
  spec.page_size = 2;
  auto client = h.client();
  client.iterate_papers(spec, [](const PaperRecord &, std::size_t) {});
  const auto &trace = h.transport.trace();
  REQUIRE(trace.size() == 5);
  for (std::size_t i = 1; i < trace.size(); ++i) {
    CHECK(trace[i].at - trace[i - 1].at >= 3000ms);
  }
}

TEST_CASE("transient failures are retried with doubling backoff") {
  Harness h;
  h.options.initial_backoff = 1000ms;
  h.arxiv.papers = numbered_papers(2);
  h.arxiv.failures_first = {503, 502};
  SearchSpec spec;
  auto client = h.client();
  CHECK(client.iterate_papers(spec, [](const PaperRecord &, std::size_t) {}) == 2);
  const auto &trace = h.transport.trace();
  REQUIRE(trace.size() == 3);
  CHECK(trace[1].at - trace[0].at == 1000ms);
  CHECK(trace[2].at - trace[1].at == 2000ms);
}

TEST_CASE("retry budget exhaustion propagates after partial progress") {
  Harness h;
  h.arxiv.papers = numbered_papers(4);
  SearchSpec spec;
  spec.page_size = 2;
  auto client = h.client();
  std::size_t delivered = 0;
  try {
    client.iterate_papers(spec, [&](const PaperRecord &, std::size_t) {
      if (++delivered == 2) {
        h.arxiv.failures_first = {500, 500, 500};
      }
    });
    FAIL("expected HttpError");
  } catch (const HttpError &e) {
    CHECK(e.status() == 500);
  }
  CHECK(delivered == 2);
  CHECK(h.arxiv.requests == 4);
}

TEST_CASE("client errors are not retried") {
  Harness h;
  h.arxiv.failures_first = {400};
  auto client = h.client();
  CHECK_THROWS_AS(client.iterate_papers(SearchSpec{}, [](const PaperRecord &, std::size_t) {}),
                  HttpError);
  CHECK(h.arxiv.requests == 1);
}

TEST_CASE("duplicate ids across pages are delivered once") {
  Harness h;
  h.arxiv.papers = numbered_papers(3);
  h.arxiv.papers.push_back(h.arxiv.papers[0]);
  SearchSpec spec;
  spec.page_size = 2;
  auto client = h.client();
  std::vector<std::string> ids;
  client.iterate_papers(spec, [&](const PaperRecord &p, std::size_t) { ids.push_back(p.arxiv_id); });
  CHECK(ids.size() == 3);
}
