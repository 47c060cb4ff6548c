#include "kb/knowledge_base.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <unistd.h>

#include "common/errors.hpp"
#include "links/link_extractor.hpp"

namespace litrepo::kb {

namespace {

using json = nlohmann::json;

void check_ref(const RepoRef &ref) {
  if (!links::valid_slug(ref.owner) || !links::valid_slug(ref.name)) {
    throw ValidationError("KbEntry: owner and name must be valid GitHub slugs");
  }
  if (ref.canonical_url != "https://github.com/" + ref.owner + "/" + ref.name) {
    throw ValidationError("KbEntry: canonical_url must be https://github.com/{owner}/{name}");
  }
}

json metrics_to_json(const RepoMetrics &m) {
  return json{{"name", m.name},
              {"description", m.description ? json(*m.description) : json(nullptr)},
              {"stars", m.stars},
              {"forks", m.forks},
              {"open_issues", m.open_issues},
              {"contributors", m.contributors},
              {"fetched_at", format_timestamp(m.fetched_at)}};
}

Timestamp timestamp_from_json(const json &value, const char *field) {
  auto ts = parse_timestamp(value.at(field).get<std::string>());
  if (!ts) {
    throw StoreError(fmt::format("field '{}' is not a UTC timestamp", field));
  }
  return *ts;
}

std::uint64_t count_from_json(const json &j, const char *field) {
  const auto &value = j.at(field);
  if (!value.is_number_unsigned()) {
    throw StoreError(fmt::format("field '{}' is not a non-negative integer", field));
  }
  return value.get<std::uint64_t>();
}

RepoMetrics metrics_from_json(const json &j) {
  RepoMetrics m;
  m.name = j.at("name").get<std::string>();
  if (!j.at("description").is_null()) {
    m.description = j.at("description").get<std::string>();
  }
  m.stars = count_from_json(j, "stars");
  m.forks = count_from_json(j, "forks");
  m.open_issues = count_from_json(j, "open_issues");
  m.contributors = count_from_json(j, "contributors");
  m.fetched_at = timestamp_from_json(j, "fetched_at");
  return m;
}

json entry_to_json(const KbEntry &e) {
  json history = json::array();
  for (const auto &h : e.history) {
    history.push_back(metrics_to_json(h));
  }
  return json{{"schema", kSchemaVersion},
              {"owner", e.ref.owner},
              {"name", e.ref.name},
              {"canonical_url", e.ref.canonical_url},
              {"source_papers", e.ref.source_papers},
              {"first_seen", format_timestamp(e.first_seen)},
              {"tier", to_string(e.tier)},
              {"latest", metrics_to_json(e.latest)},
              {"history", history}};
}

KbEntry entry_from_json(const json &j) {
  if (j.at("schema").get<int>() != kSchemaVersion) {
    throw StoreError("unsupported schema version " + j.at("schema").dump());
  }
  KbEntry e;
  e.ref.owner = j.at("owner").get<std::string>();
  e.ref.name = j.at("name").get<std::string>();
  e.ref.canonical_url = j.at("canonical_url").get<std::string>();
  e.ref.source_papers = j.at("source_papers").get<std::set<std::string>>();
  e.first_seen = timestamp_from_json(j, "first_seen");
  auto tier = parse_tier(j.at("tier").get<std::string>());
  if (!tier) {
    throw StoreError("unknown tier " + j.at("tier").dump());
  }
  e.tier = *tier;
  e.latest = metrics_from_json(j.at("latest"));
  for (const auto &h : j.at("history")) {
    e.history.push_back(metrics_from_json(h));
  }
  check_ref(e.ref);
  for (std::size_t i = 0; i < e.history.size(); ++i) {
    auto next = i + 1 < e.history.size() ? e.history[i + 1].fetched_at : e.latest.fetched_at;
    if (e.history[i].fetched_at >= next) {
      throw StoreError("history timestamps must strictly increase up to latest");
    }
  }
  return e;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(text);
  }
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') {
      out += '"';
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string join(const std::set<std::string> &items, std::string_view sep) {
  std::string out;
  for (const auto &item : items) {
    if (!out.empty()) {
      out += sep;
    }
    out += item;
  }
  return out;
}

} // namespace

void Store::upsert(const KbEntry &candidate) {
  check_ref(candidate.ref);
  auto key = candidate.ref.key();
  auto it = entries_.find(key);
  if (it == entries_.end()) {
    KbEntry fresh = candidate;
    fresh.history.clear();
    if (fresh.first_seen == Timestamp{}) {
      fresh.first_seen = fresh.latest.fetched_at;
    }
    entries_.emplace(std::move(key), std::move(fresh));
    return;
  }

  auto &entry = it->second;
  entry.ref.source_papers.insert(candidate.ref.source_papers.begin(),
                                 candidate.ref.source_papers.end());
  if (candidate.latest.fetched_at < entry.latest.fetched_at) {
    throw ValidationError(fmt::format("snapshot for {} is older than the stored one",
                                      entry.ref.canonical_url));
  }
  if (candidate.latest.fetched_at > entry.latest.fetched_at) {
    entry.history.push_back(entry.latest);
    if (history_cap_ && entry.history.size() > *history_cap_) {
      entry.history.erase(entry.history.begin(),
                          entry.history.end() - static_cast<std::ptrdiff_t>(*history_cap_));
    }
  }
  entry.latest = candidate.latest;
  entry.tier = candidate.tier;
}

void Store::retier(const std::function<MaturityTier(const RepoMetrics &)> &classify) {
  for (auto &[key, entry] : entries_) {
    entry.tier = classify(entry.latest);
  }
}

const KbEntry *Store::find(const std::string &key) const {
  auto it = entries_.find(to_lower(key));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<KbEntry> Store::ordered() const {
  std::vector<const KbEntry *> refs;
  refs.reserve(entries_.size());
  for (const auto &[key, entry] : entries_) {
    refs.push_back(&entry);
  }
  // entries_ is already key-ordered, so a stable sort on first_seen suffices.
  std::stable_sort(refs.begin(), refs.end(), [](const KbEntry *a, const KbEntry *b) {
    return a->first_seen < b->first_seen;
  });
  std::vector<KbEntry> out;
  out.reserve(refs.size());
  for (const auto *e : refs) {
    out.push_back(*e);
  }
  return out;
}

KbDiff diff(const Store &before, const Store &after) {
  KbDiff d;
  for (const auto &entry : after.ordered()) {
    const auto *old = before.find(entry.ref.key());
    if (old == nullptr) {
      d.added.push_back(entry.ref);
    } else if (!old->latest.same_counts(entry.latest)) {
      d.updated.push_back({entry.ref, old->latest, entry.latest});
    } else {
      d.unchanged.push_back(entry.ref);
    }
  }
  for (const auto &entry : before.ordered()) {
    if (after.find(entry.ref.key()) == nullptr) {
      d.removed.push_back(entry.ref);
    }
  }
  return d;
}

std::string render_diff(const KbDiff &d) {
  std::string out = fmt::format("Added ({}):\n", d.added.size());
  for (const auto &ref : d.added) {
    out += "  " + ref.canonical_url + "\n";
  }
  out += fmt::format("Updated ({}):\n", d.updated.size());
  for (const auto &change : d.updated) {
    const auto &a = change.before;
    const auto &b = change.after;
    out += fmt::format("  {}: stars {} -> {}, forks {} -> {}, open issues {} -> {}, "
                       "contributors {} -> {}\n",
                       change.ref.canonical_url, a.stars, b.stars, a.forks, b.forks,
                       a.open_issues, b.open_issues, a.contributors, b.contributors);
  }
  out += fmt::format("Unchanged ({}):\n", d.unchanged.size());
  for (const auto &ref : d.unchanged) {
    out += "  " + ref.canonical_url + "\n";
  }
  if (!d.removed.empty()) {
    out += fmt::format("Removed ({}):\n", d.removed.size());
    for (const auto &ref : d.removed) {
      out += "  " + ref.canonical_url + "\n";
    }
  }
  return out;
}

std::string render_report_line(const KbEntry &entry) {
  const auto &m = entry.latest;
  return fmt::format("The project '{}' has a maturity level of {}. It has {} stars, {} forks, "
                     "{} open issues, and {} contributors.",
                     m.name, to_string(entry.tier), m.stars, m.forks, m.open_issues,
                     m.contributors);
}

const char *default_file_name(ExportFormat format) {
  switch (format) {
  case ExportFormat::Records:
    return "kb.jsonl";
  case ExportFormat::Table:
    return "kb.csv";
  case ExportFormat::Report:
    return "report.txt";
  }
  return "kb.jsonl";
}

std::string serialize(const Store &store, ExportFormat format) {
  std::string out;
  auto entries = store.ordered();
  switch (format) {
  case ExportFormat::Records:
    for (const auto &e : entries) {
      out += entry_to_json(e).dump();
      out += '\n';
    }
    break;
  case ExportFormat::Table:
    out = "owner,name,canonical_url,tier,stars,forks,open_issues,contributors,"
          "fetched_at,first_seen,description,source_papers\n";
    for (const auto &e : entries) {
      const auto &m = e.latest;
      out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_field(e.ref.owner),
                         csv_field(e.ref.name), csv_field(e.ref.canonical_url),
                         to_string(e.tier), m.stars, m.forks, m.open_issues, m.contributors,
                         format_timestamp(m.fetched_at), format_timestamp(e.first_seen),
                         csv_field(m.description.value_or("")),
                         csv_field(join(e.ref.source_papers, ";")));
    }
    break;
  case ExportFormat::Report:
    for (const auto &e : entries) {
      out += render_report_line(e);
      out += '\n';
    }
    break;
  }
  return out;
}

Store parse_records(std::string_view text, std::optional<std::size_t> history_cap) {
  Store store(history_cap);
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    auto line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos
                                                               : end - pos);
    pos = end == std::string_view::npos ? text.size() : end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) {
      continue;
    }
    try {
      auto entry = entry_from_json(json::parse(line));
      auto key = entry.ref.key();
      if (!store.entries_.emplace(key, std::move(entry)).second) {
        throw StoreError("duplicate repository " + key);
      }
    } catch (const StoreError &e) {
      throw StoreError(fmt::format("line {}: {}", line_no, e.what()));
    } catch (const std::exception &e) {
      throw StoreError(fmt::format("line {}: invalid record: {}", line_no, e.what()));
    }
  }
  return store;
}

void export_store(const Store &store, ExportFormat format, const std::filesystem::path &path) {
  auto content = serialize(store, format);
  auto tmp = path;
  tmp += fmt::format(".tmp.{}", ::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw StoreError("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw StoreError("cannot replace " + path.string() + ": " + ec.message());
  }
}

Store load(const std::filesystem::path &path, std::optional<std::size_t> history_cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw StoreError("cannot open knowledge base " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_records(buffer.str(), history_cap);
  } catch (const StoreError &e) {
    throw StoreError(path.string() + ": " + e.what());
  }
}

} // namespace litrepo::kb
