#include "litrepo/litrepo.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <string>

#include "common/errors.hpp"
#include "kb/knowledge_base.hpp"
#include "links/link_extractor.hpp"
#include "pipeline/pipeline.hpp"

using namespace litrepo;

struct litrepo_config {
  pipeline::RunConfig run;
  bool terms_customized = false;
};

struct litrepo_store {
  kb::Store store;
};

namespace {

thread_local std::string g_last_error;

litrepo_status fail(litrepo_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <typename Fn> litrepo_status guarded(Fn &&fn) {
  try {
    g_last_error.clear();
    return fn();
  } catch (const ValidationError &e) {
    return fail(LITREPO_E_VALIDATION, e.what());
  } catch (const links::NotARepositoryError &e) {
    return fail(LITREPO_E_NOT_A_REPOSITORY, e.what());
  } catch (const pipeline::FatalError &e) {
    return fail(e.malformed_feed() ? LITREPO_E_PARSE : LITREPO_E_NETWORK, e.what());
  } catch (const StoreError &e) {
    return fail(LITREPO_E_IO, e.what());
  } catch (const HttpError &e) {
    return fail(LITREPO_E_NETWORK, e.what());
  } catch (const ParseError &e) {
    return fail(LITREPO_E_PARSE, e.what());
  } catch (const std::invalid_argument &e) {
    return fail(LITREPO_E_INVALID_ARGUMENT, e.what());
  } catch (const std::exception &e) {
    return fail(LITREPO_E_INTERNAL, e.what());
  } catch (...) {
    return fail(LITREPO_E_INTERNAL, "unknown error");
  }
}

char *duplicate(const std::string &s) {
  auto *out = static_cast<char *>(std::malloc(s.size() + 1));
  if (out == nullptr) {
    throw std::bad_alloc();
  }
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Int> Int parse_number(const std::string &key, const std::string &value) {
  Int out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    throw std::invalid_argument("option " + key + ": not an integer: " + value);
  }
  return out;
}

bool parse_bool(const std::string &key, const std::string &value) {
  auto v = to_lower(value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") {
    return true;
  }
  if (v == "false" || v == "0" || v == "no" || v == "off") {
    return false;
  }
  throw std::invalid_argument("option " + key + ": not a boolean: " + value);
}

void apply(pipeline::RunConfig &c, const std::string &key, const std::string &value) {
  if (key == "from-year") {
    c.search.date_from = parse_number<int>(key, value);
  } else if (key == "to-year") {
    c.search.date_to = parse_number<int>(key, value);
  } else if (key == "max-results") {
    c.search.max_results = parse_number<std::size_t>(key, value);
  } else if (key == "page-size") {
    c.page_size = parse_number<std::size_t>(key, value);
  } else if (key == "arxiv-base-url") {
    c.arxiv_base_url = value;
  } else if (key == "github-base-url") {
    c.github_base_url = value;
  } else if (key == "normalize-dates") {
    c.normalize_dates = parse_bool(key, value);
  } else if (key == "arxiv-delay-ms") {
    c.arxiv_delay = Duration{parse_number<std::int64_t>(key, value)};
  } else if (key == "min-interval-ms") {
    c.github_min_interval = Duration{parse_number<std::int64_t>(key, value)};
  } else if (key == "max-retries") {
    c.max_retries = parse_number<int>(key, value);
  } else if (key == "respect-server-hints") {
    c.respect_server_hints = parse_bool(key, value);
  } else if (key == "medium-stars") {
    c.rule.medium_min_stars = parse_number<std::uint64_t>(key, value);
  } else if (key == "high-stars") {
    c.rule.high_min_stars = parse_number<std::uint64_t>(key, value);
  } else if (key == "out-dir") {
    c.out_dir = value;
  } else if (key == "serial") {
    c.serial = parse_bool(key, value);
  } else if (key == "token-env") {
    c.token_env = value;
  } else if (key == "include-anonymous") {
    c.include_anonymous_contributors = parse_bool(key, value);
  } else if (key == "history-cap") {
    c.history_cap = parse_number<std::size_t>(key, value);
  } else if (key == "verbosity") {
    c.verbosity = parse_number<int>(key, value);
  } else if (key == "fixed-clock") {
    c.fixed_clock = Timestamp{std::chrono::seconds{parse_number<std::int64_t>(key, value)}};
  } else {
    throw std::invalid_argument("unknown option: " + key);
  }
}

pipeline::Output make_output(litrepo_write_fn write, void *user) {
  pipeline::Output output;
  if (write != nullptr) {
    output.out = [write, user](std::string_view text) {
      write(user, LITREPO_STDOUT, text.data(), text.size());
    };
    output.err = [write, user](std::string_view text) {
      write(user, LITREPO_STDERR, text.data(), text.size());
    };
  }
  return output;
}

} // namespace

extern "C" {

const char *litrepo_version(void) { return "1.0.0"; }

const char *litrepo_status_string(litrepo_status status) {
  switch (status) {
  case LITREPO_OK:
    return "ok";
  case LITREPO_E_INVALID_ARGUMENT:
    return "invalid argument";
  case LITREPO_E_VALIDATION:
    return "validation error";
  case LITREPO_E_NETWORK:
    return "network error";
  case LITREPO_E_PARSE:
    return "parse error";
  case LITREPO_E_IO:
    return "I/O error";
  case LITREPO_E_MISMATCH:
    return "selfcheck mismatch";
  case LITREPO_E_NOT_A_REPOSITORY:
    return "not a repository";
  case LITREPO_E_INTERNAL:
    return "internal error";
  }
  return "unknown status";
}

const char *litrepo_last_error(void) { return g_last_error.c_str(); }

void litrepo_string_free(char *s) { std::free(s); }

litrepo_config *litrepo_config_new(void) {
  try {
    return new litrepo_config{};
  } catch (...) {
    return nullptr;
  }
}

void litrepo_config_free(litrepo_config *config) { delete config; }

litrepo_status litrepo_config_set(litrepo_config *config, const char *key, const char *value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    apply(config->run, key, value);
    return LITREPO_OK;
  });
}

litrepo_status litrepo_config_add_term(litrepo_config *config, const char *term) {
  if (config == nullptr || term == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    if (!config->terms_customized) {
      config->run.search.terms.clear();
      config->terms_customized = true;
    }
    config->run.search.terms.emplace_back(term);
    return LITREPO_OK;
  });
}

litrepo_status litrepo_config_validate(const litrepo_config *config) {
  if (config == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null config");
  }
  return guarded([&] {
    config->run.validate();
    return LITREPO_OK;
  });
}

litrepo_status litrepo_build_query(const litrepo_config *config, char **out) {
  if (config == nullptr || out == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    auto query = arxiv::build_query(config->run.effective_search());
    if (config->run.normalize_dates) {
      query = arxiv::normalize_dates(query);
    }
    *out = duplicate(query);
    return LITREPO_OK;
  });
}

litrepo_status litrepo_run(const litrepo_config *config, litrepo_write_fn write, void *user) {
  if (config == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null config");
  }
  return guarded([&] {
    pipeline::run(config->run, make_output(write, user));
    return LITREPO_OK;
  });
}

litrepo_status litrepo_monitor(const litrepo_config *config, const char *previous_store,
                               litrepo_write_fn write, void *user) {
  if (config == nullptr || previous_store == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    config->run.validate();
    pipeline::monitor(config->run, previous_store, make_output(write, user));
    return LITREPO_OK;
  });
}

litrepo_status litrepo_selfcheck(const litrepo_config *config, const char *tier_filter,
                                 litrepo_write_fn write, void *user) {
  if (config == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null config");
  }
  return guarded([&] {
    std::vector<maturity::ReferenceRow> rows;
    std::optional<MaturityTier> only;
    if (tier_filter != nullptr) {
      only = parse_tier(tier_filter);
      if (!only) {
        throw std::invalid_argument(std::string("unknown tier: ") + tier_filter);
      }
    }
    for (const auto &row : maturity::reference_rows()) {
      if (!only || row.tier == *only) {
        rows.push_back(row);
      }
    }
    if (!pipeline::selfcheck(config->run.rule, rows, make_output(write, user))) {
      return fail(LITREPO_E_MISMATCH, "reference classifications disagree");
    }
    return LITREPO_OK;
  });
}

litrepo_status litrepo_extract_repositories(const char *text, char **out) {
  if (text == nullptr || out == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    std::string joined;
    for (const auto &ref : links::dedupe(links::find_repositories(text, ""))) {
      joined += ref.canonical_url + "\n";
    }
    *out = duplicate(joined);
    return LITREPO_OK;
  });
}

litrepo_status litrepo_canonicalize(const char *url, char **out) {
  if (url == nullptr || out == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *out = duplicate(links::canonicalize(links::clean_url(url), "").canonical_url);
    return LITREPO_OK;
  });
}

litrepo_status litrepo_classify(const litrepo_config *config, uint64_t stars,
                                litrepo_tier *out) {
  if (config == nullptr || out == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    config->run.rule.validate();
    RepoMetrics metrics;
    metrics.stars = stars;
    *out = static_cast<litrepo_tier>(maturity::classify(metrics, config->run.rule));
    return LITREPO_OK;
  });
}

litrepo_status litrepo_store_load(const char *path, litrepo_store **out) {
  if (path == nullptr || out == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *out = new litrepo_store{kb::load(path)};
    return LITREPO_OK;
  });
}

void litrepo_store_free(litrepo_store *store) { delete store; }

size_t litrepo_store_size(const litrepo_store *store) {
  return store == nullptr ? 0 : store->store.size();
}

litrepo_status litrepo_store_export(const litrepo_store *store, const char *format,
                                    const char *path) {
  if (store == nullptr || format == nullptr || path == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    std::string f = format;
    kb::ExportFormat fmt;
    if (f == "records") {
      fmt = kb::ExportFormat::Records;
    } else if (f == "table") {
      fmt = kb::ExportFormat::Table;
    } else if (f == "report") {
      fmt = kb::ExportFormat::Report;
    } else {
      throw std::invalid_argument("unknown export format: " + f);
    }
    kb::export_store(store->store, fmt, path);
    return LITREPO_OK;
  });
}

litrepo_status litrepo_store_diff(const litrepo_store *before, const litrepo_store *after,
                                  char **out) {
  if (before == nullptr || after == nullptr || out == nullptr) {
    return fail(LITREPO_E_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    *out = duplicate(kb::render_diff(kb::diff(before->store, after->store)));
    return LITREPO_OK;
  });
}

} // extern "C"
