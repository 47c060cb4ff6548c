#include <doctest.h>

#include <random>
#include <set>

#include "links/link_extractor.hpp"
#include "maturity/reference_data.hpp"

using namespace litrepo;
using namespace litrepo::links;

namespace {

// Strip one junk character at a time until the string stops changing.
std::string strip_until_stable(std::string s) {
  while (!s.empty() && kTrailingJunk.find(s.back()) != std::string_view::npos) {
    s.pop_back();
  }
  return s;
}

std::vector<std::string> reference_urls() {
  std::vector<std::string> out;
  for (auto u : maturity::reference_urls()) {
    out.emplace_back(u);
  }
  return out;
}

} // namespace

TEST_CASE("extract keeps trailing punctuation for the cleaner") {
  auto hits = extract_urls("Code at https://github.com/ncbi-nlp/BioSentVec. We show…", "p1");
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].url_text == "https://github.com/ncbi-nlp/BioSentVec.");
  CHECK(hits[0].source_paper == "p1");
}

TEST_CASE("extract finds nothing in plain prose") {
  CHECK(extract_urls("No links here.", "p").empty());
  CHECK(extract_urls("", "p").empty());
  CHECK(extract_urls("see github.com/a/b without scheme", "p").empty());
}

TEST_CASE("extract returns matches in document order") {
  auto hits = extract_urls("see https://github.com/a/b, https://github.com/c/d;", "p");
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].url_text == "https://github.com/a/b,");
  CHECK(hits[1].url_text == "https://github.com/c/d;");
}

TEST_CASE("extract accepts http, www and mixed case hosts") {
  auto hits = extract_urls("(http://www.GitHub.com/x/y) and HTTPS://github.com/z/w", "p");
  REQUIRE(hits.size() == 2);
  CHECK(hits[0].url_text == "http://www.GitHub.com/x/y)");
  CHECK(hits[1].url_text == "HTTPS://github.com/z/w");
}

TEST_CASE("extract ignores other hosts") {
  CHECK(extract_urls("https://gitlab.com/a/b https://gist.github.com/a/1", "p").empty());
}

TEST_CASE("extract stops at characters that cannot appear in a URL") {
  auto hits = extract_urls("<a href=\"https://github.com/a/b\">x</a>", "p");
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].url_text == "https://github.com/a/b");
}

TEST_CASE("clean_url strips trailing prose punctuation") {
  CHECK(clean_url("https://github.com/a/b.") == "https://github.com/a/b");
  CHECK(clean_url("https://github.com/a/b") == "https://github.com/a/b");
  CHECK(clean_url("https://github.com/a/b.),") == "https://github.com/a/b");
  CHECK(clean_url("https://github.com/a/b;") == "https://github.com/a/b");
  CHECK(clean_url("https://github.com/a/b,") == "https://github.com/a/b");
  CHECK(clean_url("https://github.com/a/b'\"]}!?:") == "https://github.com/a/b");
}

TEST_CASE("clean_url properties") {
  std::mt19937 rng(17);
  const std::string body_chars = "abcXYZ019-_./:?#=&";
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s = "https://github.com/";
    auto len = rng() % 20;
    for (std::size_t i = 0; i < len; ++i) {
      s.push_back(body_chars[rng() % body_chars.size()]);
    }
    auto junk = rng() % 5;
    for (std::size_t i = 0; i < junk; ++i) {
      s.push_back(kTrailingJunk[rng() % kTrailingJunk.size()]);
    }
    auto once = clean_url(s);
    CHECK(once == strip_until_stable(s));
    CHECK(clean_url(once) == once);
    CHECK(once.size() <= s.size());
    CHECK(s.compare(0, once.size(), once) == 0);
  }
}

TEST_CASE("canonicalize extracts owner and name") {
  auto ref = canonicalize("https://github.com/RyanWangZf/PyTrial", "p1");
  CHECK(ref.owner == "RyanWangZf");
  CHECK(ref.name == "PyTrial");
  CHECK(ref.canonical_url == "https://github.com/RyanWangZf/PyTrial");
  CHECK(ref.source_papers == std::set<std::string>{"p1"});
}

TEST_CASE("canonicalize normalizes scheme, host, .git and deeper paths") {
  auto ref = canonicalize("http://www.github.com/a/b.git/tree/main/src", "p");
  CHECK(ref.owner == "a");
  CHECK(ref.name == "b");
  CHECK(ref.canonical_url == "https://github.com/a/b");
  CHECK(canonicalize("https://github.com/a/b?tab=readme#top", "p").canonical_url ==
        "https://github.com/a/b");
  CHECK(canonicalize("https://github.com/a/b/", "p").canonical_url == "https://github.com/a/b");
  CHECK(canonicalize("https://github.com/frankkramer-lab/covid19.MISenn", "p").name ==
        "covid19.MISenn");
}

TEST_CASE("canonicalize rejects non-repository URLs") {
  CHECK_THROWS_AS(canonicalize("https://github.com/onlyowner", "p"), NotARepositoryError);
  CHECK_THROWS_AS(canonicalize("https://github.com/onlyowner/", "p"), NotARepositoryError);
  CHECK_THROWS_AS(canonicalize("https://github.com", "p"), NotARepositoryError);
  CHECK_THROWS_AS(canonicalize("https://github.com//b", "p"), MalformedUrlError);
  CHECK_THROWS_AS(canonicalize("https://github.com/a/.git", "p"), MalformedUrlError);
  CHECK_THROWS_AS(canonicalize("https://github.com/a%20b/c", "p"), MalformedUrlError);
  CHECK_THROWS_AS(canonicalize("https://example.com/a/b", "p"), MalformedUrlError);
}

TEST_CASE("canonical form holds under random suffix noise") {
  std::mt19937 rng(23);
  const std::string slug_chars = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_.";
  const std::vector<std::string> suffixes = {"", "/", ".git", "/tree/main", "/blob/master/README.md",
                                             "?tab=readme-ov-file", "#readme", "/issues/12",
                                             ".git/tree/dev/src"};
  const std::vector<std::string> prefixes = {"https://github.com/", "http://github.com/",
                                             "https://www.github.com/", "HTTPS://GitHub.com/"};
  auto slug = [&] {
    std::string s;
    auto len = 1 + rng() % 15;
    for (std::size_t i = 0; i < len; ++i) {
      s.push_back(slug_chars[rng() % slug_chars.size()]);
    }
    s.push_back(slug_chars[rng() % 62]); // ends alphanumeric
    return s;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    auto owner = slug();
    auto name = slug();
    if (name.size() >= 4 && to_lower(name.substr(name.size() - 4)) == ".git") {
      continue;
    }
    auto url = prefixes[rng() % prefixes.size()] + owner + "/" + name +
               suffixes[rng() % suffixes.size()];
    std::string junk;
    for (std::size_t i = rng() % 3; i > 0; --i) {
      junk.push_back(".,;"[rng() % 3]);
    }
    auto ref = canonicalize(clean_url(url + junk), "p");
    CHECK(ref.owner == owner);
    CHECK(ref.name == name);
    CHECK(ref.canonical_url == "https://github.com/" + ref.owner + "/" + ref.name);
    CHECK(ref.canonical_url.back() != '/');
    CHECK(ref.canonical_url.find_first_of("?#") == std::string::npos);
  }
}

TEST_CASE("dedupe is case-insensitive and unions sources") {
  auto a = canonicalize("https://github.com/a/B", "paper1");
  auto b = canonicalize("https://github.com/A/b", "paper2");
  auto out = dedupe({a, b});
  REQUIRE(out.size() == 1);
  CHECK(out[0].canonical_url == "https://github.com/a/B");
  CHECK(out[0].source_papers == std::set<std::string>{"paper1", "paper2"});
  CHECK(dedupe({}).empty());
}

TEST_CASE("dedupe of the duplicated reference list keeps 31 in order") {
  std::vector<RepoRef> refs;
  auto urls = reference_urls();
  for (int round = 0; round < 2; ++round) {
    for (std::size_t i = 0; i < urls.size(); ++i) {
      auto url = round == 0 ? urls[i] : to_lower(urls[i]);
      refs.push_back(canonicalize(url, "p" + std::to_string(round)));
    }
  }
  std::set<std::string> oracle;
  for (const auto &r : refs) {
    oracle.insert(to_lower(r.owner) + "/" + to_lower(r.name));
  }
  auto out = dedupe(refs);
  CHECK(out.size() == oracle.size());
  CHECK(out.size() == 31);
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i].canonical_url == urls[i]);
    CHECK(out[i].source_papers.size() == 2);
  }
}

TEST_CASE("dedupe is idempotent and never grows") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<RepoRef> refs;
    auto n = rng() % 30;
    for (std::size_t i = 0; i < n; ++i) {
      std::string owner = rng() % 2 ? "Owner" : "owner";
      refs.push_back(canonicalize("https://github.com/" + owner + "/r" + std::to_string(rng() % 8),
                                  "p" + std::to_string(rng() % 5)));
    }
    auto once = dedupe(refs);
    CHECK(once.size() <= refs.size());
    CHECK(dedupe(once) == once);
  }
}

TEST_CASE("find_repositories drops non-repository hits") {
  auto refs = find_repositories(
      "Profile https://github.com/someone. Repo https://github.com/a/b; bare https://github.com.",
      "p");
  REQUIRE(refs.size() == 1);
  CHECK(refs[0].canonical_url == "https://github.com/a/b");
}
