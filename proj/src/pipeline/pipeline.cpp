#include "pipeline/pipeline.hpp"

#include <cstdlib>
#include <memory>

#include <fmt/format.h>

#include "common/errors.hpp"
#include "links/link_extractor.hpp"

namespace litrepo::pipeline {

arxiv::SearchSpec RunConfig::effective_search() const {
  auto spec = search;
  spec.page_size = page_size.value_or(std::min(kDefaultPageSize, search.max_results));
  return spec;
}

void RunConfig::validate() const {
  effective_search().validate();
  rule.validate();
  if (arxiv_delay < Duration::zero()) {
    throw ValidationError("RunConfig: arXiv delay must be >= 0");
  }
  github::ThrottlePolicy{github_min_interval.value_or(kAnonymousInterval), max_retries,
                         respect_server_hints}
      .validate();
  if (arxiv_base_url.empty() || github_base_url.empty()) {
    throw ValidationError("RunConfig: base URLs must be non-empty");
  }
  http::split_url(arxiv_base_url);
  http::split_url(github_base_url);
  if (token_env.empty()) {
    throw ValidationError("RunConfig: token environment variable name must be non-empty");
  }
}

std::string format_url_list(const std::vector<RepoRef> &refs) {
  std::string out = "[";
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (i > 0) {
      out += ", ";
    }
    out += "'" + refs[i].canonical_url + "'";
  }
  out += "]";
  return out;
}

Pipeline::Pipeline(RunConfig config, http::Transport &transport, Clock &clock, Output output)
    : config_(std::move(config)), transport_(transport), clock_(clock),
      output_(std::move(output)) {
  config_.validate();
}

RunSummary Pipeline::run(kb::Store &store) {
  RunSummary summary;
  const bool chatty = config_.verbosity > 0;

  arxiv::ClientOptions arxiv_options;
  arxiv_options.base_url = config_.arxiv_base_url;
  arxiv_options.politeness_delay = config_.arxiv_delay;
  arxiv_options.normalize_dates = config_.normalize_dates;
  arxiv::Client papers(transport_, clock_, arxiv_options);

  output_.out("Processing arXiv papers:\n");
  std::vector<RepoRef> found;
  try {
    summary.papers = papers.iterate_papers(
        config_.effective_search(), [&](const PaperRecord &paper, std::size_t expected) {
          if (chatty) {
            output_.out(fmt::format("\rPaper {}/{}", ++summary.papers, expected));
          }
          for (auto &ref : links::find_repositories(paper.title, paper.arxiv_id)) {
            found.push_back(std::move(ref));
          }
          for (auto &ref : links::find_repositories(paper.abstract, paper.arxiv_id)) {
            found.push_back(std::move(ref));
          }
        });
  } catch (const std::exception &e) {
    if (chatty && summary.papers > 0) {
      output_.out("\n");
    }
    throw FatalError(std::string("arXiv retrieval failed: ") + e.what(),
                     dynamic_cast<const ParseError *>(&e) != nullptr);
  }
  if (chatty && summary.papers > 0) {
    output_.out("\n");
  }

  auto refs = links::dedupe(found);
  summary.repositories = refs.size();
  output_.out("\nFound GitHub URLs: " + format_url_list(refs) + "\n");

  github::ClientOptions gh_options;
  gh_options.base_url = config_.github_base_url;
  if (const char *token = std::getenv(config_.token_env.c_str())) {
    gh_options.token = token;
  }
  gh_options.include_anonymous_contributors = config_.include_anonymous_contributors;
  github::ThrottlePolicy policy;
  policy.min_interval = config_.github_min_interval.value_or(
      gh_options.token.empty() ? kAnonymousInterval : kAuthenticatedInterval);
  policy.max_retries = config_.max_retries;
  policy.respect_server_hints = config_.respect_server_hints;
  github::Client repos(transport_, clock_, policy, gh_options);

  auto enriched = repos.enrich(refs);
  for (const auto &snapshot : enriched.successes) {
    kb::KbEntry entry;
    entry.ref = snapshot.ref;
    entry.latest = snapshot.metrics;
    entry.tier = maturity::classify(snapshot.metrics, config_.rule);
    entry.first_seen = snapshot.metrics.fetched_at;
    store.upsert(entry);
    if (chatty) {
      const auto *stored = store.find(entry.ref.key());
      output_.out("\n" + kb::render_report_line(*stored) + "\n");
    }
  }
  for (const auto &failure : enriched.failures) {
    output_.err(fmt::format("Error fetching {}: {}: {}\n", failure.repo.canonical_url,
                            github::to_string(failure.kind), failure.detail));
  }
  store.retier([&](const RepoMetrics &m) { return maturity::classify(m, config_.rule); });
  summary.enriched = enriched.successes.size();
  summary.failed = enriched.failures.size();

  write_exports(store);
  return summary;
}

void Pipeline::write_exports(const kb::Store &store) {
  std::error_code ec;
  std::filesystem::create_directories(config_.out_dir, ec);
  if (ec) {
    throw StoreError("cannot create " + config_.out_dir.string() + ": " + ec.message());
  }
  for (auto format : {kb::ExportFormat::Records, kb::ExportFormat::Table,
                      kb::ExportFormat::Report}) {
    kb::export_store(store, format, config_.out_dir / kb::default_file_name(format));
  }
}

kb::KbDiff Pipeline::monitor(const std::filesystem::path &previous) {
  auto before = kb::load(previous, config_.history_cap);
  auto after = before;
  run(after);
  auto d = kb::diff(before, after);
  output_.out("\n" + kb::render_diff(d));
  return d;
}

namespace {

struct Runtime {
  std::unique_ptr<http::Transport> transport = http::make_default_transport();
  std::unique_ptr<Clock> clock;

  explicit Runtime(const RunConfig &config) {
    if (config.fixed_clock) {
      clock = std::make_unique<FakeClock>(TimePoint{*config.fixed_clock});
    } else {
      clock = std::make_unique<SystemClock>();
    }
  }
};

} // namespace

RunSummary run(const RunConfig &config, const Output &output) {
  Runtime rt(config);
  Pipeline pipeline(config, *rt.transport, *rt.clock, output);
  kb::Store store(config.history_cap);
  return pipeline.run(store);
}

kb::KbDiff monitor(const RunConfig &config, const std::filesystem::path &previous,
                   const Output &output) {
  Runtime rt(config);
  Pipeline pipeline(config, *rt.transport, *rt.clock, output);
  return pipeline.monitor(previous);
}

bool selfcheck(const maturity::TierRule &rule, std::span<const maturity::ReferenceRow> rows,
               const Output &output) {
  std::vector<maturity::OracleRow> oracle;
  for (const auto &row : rows) {
    oracle.push_back({maturity::metrics_of(row), row.tier});
  }
  auto mismatches = maturity::calibrate_check(rule, oracle);
  for (const auto &m : mismatches) {
    output.err(fmt::format("tier mismatch: '{}' expected {} got {}\n", m.metrics.name,
                           to_string(m.expected), to_string(m.actual)));
  }

  std::size_t bad_lines = 0;
  for (const auto &row : rows) {
    kb::KbEntry entry;
    entry.latest = maturity::metrics_of(row);
    entry.tier = maturity::classify(entry.latest, rule);
    auto line = kb::render_report_line(entry);
    if (line != row.line) {
      ++bad_lines;
      output.err(fmt::format("line mismatch:\n  expected: {}\n  actual:   {}\n", row.line, line));
    }
  }

  bool ok = mismatches.empty() && bad_lines == 0;
  output.out(fmt::format("selfcheck: {} rows, {} tier mismatches, {} line mismatches: {}\n",
                         rows.size(), mismatches.size(), bad_lines, ok ? "OK" : "FAILED"));
  return ok;
}

} // namespace litrepo::pipeline
