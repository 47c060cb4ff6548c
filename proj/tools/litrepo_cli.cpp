// litrepo: command-line front end over the C API.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "litrepo/litrepo.h"

namespace {

void write_stream(void *, litrepo_stream stream, const char *text, size_t len) {
  std::FILE *target = stream == LITREPO_STDERR ? stderr : stdout;
  std::fwrite(text, 1, len, target);
  std::fflush(target);
}

using ConfigPtr = std::unique_ptr<litrepo_config, decltype(&litrepo_config_free)>;

int report(litrepo_status status) {
  if (status == LITREPO_OK) {
    return 0;
  }
  std::cerr << "litrepo: " << litrepo_status_string(status);
  if (*litrepo_last_error() != '\0') {
    std::cerr << ": " << litrepo_last_error();
  }
  std::cerr << "\n";
  return status == LITREPO_E_VALIDATION || status == LITREPO_E_INVALID_ARGUMENT ? 2 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Mine arXiv abstracts for GitHub repositories and grade their maturity"};
  app.set_config("--config", "", "Config file whose keys mirror the long flags");
  app.require_subcommand(1);

  std::vector<std::string> terms;
  std::string from_year, to_year, max_results, page_size, arxiv_url, github_url;
  std::string min_interval, arxiv_delay, max_retries, medium_stars, high_stars;
  std::string out_dir, token_env, history_cap, fixed_clock;
  bool normalize_dates = false, serial = false, include_anonymous = false;
  bool ignore_hints = false, quiet = false;

  // Options given as strings so the library owns parsing and validation;
  // only flags actually supplied are forwarded.
  std::vector<std::pair<std::string, CLI::Option *>> forwarded;
  auto add = [&](const std::string &name, std::string &slot, const std::string &help) {
    auto *option = app.add_option("--" + name, slot, help);
    forwarded.emplace_back(name, option);
    return option;
  };
  app.add_option("--terms", terms, "Search phrases (default: the four clinical informatics phrases)");
  add("from-year", from_year, "First submission year (default 2019)");
  add("to-year", to_year, "Last submission year (default 2024)");
  add("max-results", max_results, "Cap on papers processed (default 1000)");
  add("page-size", page_size, "Papers per arXiv request (default min(100, max-results))");
  add("arxiv-base-url", arxiv_url, "arXiv query endpoint");
  add("github-base-url", github_url, "GitHub REST API root");
  add("min-interval-ms", min_interval, "Gap between GitHub requests (default 720, 100 with token)");
  add("arxiv-delay-ms", arxiv_delay, "Gap between arXiv requests (default 3000)");
  add("max-retries", max_retries, "GitHub retries per request (default 3)");
  add("medium-stars", medium_stars, "Stars needed for Medium (default 30)");
  add("high-stars", high_stars, "Stars needed for High (default 100)");
  add("out-dir", out_dir, "Directory for kb.jsonl, kb.csv and report.txt (default .)");
  add("token-env", token_env, "Environment variable holding a GitHub token (default GITHUB_TOKEN)");
  add("history-cap", history_cap, "Keep at most this many prior snapshots per repository");
  add("fixed-clock", fixed_clock, "Run on a virtual clock starting at this UTC epoch second")
      ->group("");
  app.add_flag("--normalize-dates", normalize_dates,
               "Send the date range in the timestamp form the live arXiv API accepts");
  app.add_flag("--serial", serial, "Run stages strictly one after another (always the case)");
  app.add_flag("--include-anonymous", include_anonymous, "Count anonymous contributors");
  app.add_flag("--ignore-server-hints", ignore_hints, "Ignore Retry-After and quota headers");
  app.add_flag("-q,--quiet", quiet, "Suppress progress and per-repository lines");

  // Global options may also follow the subcommand name.
  app.fallthrough();
  auto *run_cmd = app.add_subcommand("run", "Search, extract, enrich, classify and write outputs");
  auto *monitor_cmd = app.add_subcommand("monitor", "Re-run on top of a previous knowledge base and show what changed");
  std::string previous;
  monitor_cmd->add_option("--previous", previous, "Previous kb.jsonl")->required();
  auto *selfcheck_cmd = app.add_subcommand("selfcheck", "Check the tier rule and report format against the reference output");
  std::string only_tier;
  selfcheck_cmd->add_option("--only-tier", only_tier, "Restrict to reference rows of one tier")
      ->check(CLI::IsMember({"Low", "Medium", "High"}));

  CLI11_PARSE(app, argc, argv);

  ConfigPtr config(litrepo_config_new(), &litrepo_config_free);
  if (!config) {
    std::cerr << "litrepo: out of memory\n";
    return 1;
  }
  for (const auto &term : terms) {
    if (auto rc = litrepo_config_add_term(config.get(), term.c_str()); rc != LITREPO_OK) {
      return report(rc);
    }
  }
  for (const auto &[name, option] : forwarded) {
    if (option->count() == 0) {
      continue;
    }
    if (auto rc = litrepo_config_set(config.get(), name.c_str(), option->as<std::string>().c_str());
        rc != LITREPO_OK) {
      return report(rc);
    }
  }
  std::vector<std::pair<const char *, bool>> flags{{"normalize-dates", normalize_dates},
                                                   {"serial", serial},
                                                   {"include-anonymous", include_anonymous}};
  for (const auto &[name, on] : flags) {
    if (on) {
      litrepo_config_set(config.get(), name, "true");
    }
  }
  if (ignore_hints) {
    litrepo_config_set(config.get(), "respect-server-hints", "false");
  }
  if (quiet) {
    litrepo_config_set(config.get(), "verbosity", "0");
  }

  if (*selfcheck_cmd) {
    return report(litrepo_selfcheck(config.get(), only_tier.empty() ? nullptr : only_tier.c_str(),
                                    write_stream, nullptr));
  }
  if (auto rc = litrepo_config_validate(config.get()); rc != LITREPO_OK) {
    return report(rc);
  }
  if (*monitor_cmd) {
    return report(litrepo_monitor(config.get(), previous.c_str(), write_stream, nullptr));
  }
  if (*run_cmd) {
    return report(litrepo_run(config.get(), write_stream, nullptr));
  }
  return 2;
}
