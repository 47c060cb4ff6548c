#include "common/types.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <fmt/format.h>

namespace litrepo {

namespace {

template <typename Int>
bool parse_fixed(std::string_view text, std::size_t pos, std::size_t len,
                 Int &out) {
  if (pos + len > text.size()) {
    return false;
  }
  auto first = text.data() + pos;
  auto last = first + len;
  if (!std::all_of(first, last,
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return false;
  }
  return std::from_chars(first, last, out).ec == std::errc{};
}

} // namespace

std::string RepoRef::key() const { return to_lower(owner) + "/" + to_lower(name); }

const char *to_string(MaturityTier tier) {
  switch (tier) {
  case MaturityTier::Low:
    return "Low";
  case MaturityTier::Medium:
    return "Medium";
  case MaturityTier::High:
    return "High";
  }
  return "Low";
}

std::optional<MaturityTier> parse_tier(std::string_view text) {
  if (text == "Low") {
    return MaturityTier::Low;
  }
  if (text == "Medium") {
    return MaturityTier::Medium;
  }
  if (text == "High") {
    return MaturityTier::High;
  }
  return std::nullopt;
}

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string format_date(std::chrono::year_month_day date) {
  return fmt::format("{:04}-{:02}-{:02}", static_cast<int>(date.year()),
                     static_cast<unsigned>(date.month()),
                     static_cast<unsigned>(date.day()));
}

std::optional<std::chrono::year_month_day> parse_date(std::string_view text) {
  int y = 0;
  unsigned m = 0;
  unsigned d = 0;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-' ||
      !parse_fixed(text, 0, 4, y) || !parse_fixed(text, 5, 2, m) ||
      !parse_fixed(text, 8, 2, d)) {
    return std::nullopt;
  }
  std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                  std::chrono::day{d}};
  if (!ymd.ok()) {
    return std::nullopt;
  }
  return ymd;
}

std::string format_timestamp(Timestamp ts) {
  auto day = std::chrono::floor<std::chrono::days>(ts);
  std::chrono::hh_mm_ss tod{ts - day};
  return fmt::format("{}T{:02}:{:02}:{:02}Z",
                     format_date(std::chrono::year_month_day{day}),
                     tod.hours().count(), tod.minutes().count(),
                     tod.seconds().count());
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  auto date = parse_date(text);
  int hh = 0;
  int mm = 0;
  int ss = 0;
  if (!date || text.size() != 20 || text[10] != 'T' || text[13] != ':' ||
      text[16] != ':' || text[19] != 'Z' || !parse_fixed(text, 11, 2, hh) ||
      !parse_fixed(text, 14, 2, mm) || !parse_fixed(text, 17, 2, ss) ||
      hh > 23 || mm > 59 || ss > 60) {
    return std::nullopt;
  }
  return std::chrono::sys_days{*date} + std::chrono::hours{hh} +
         std::chrono::minutes{mm} + std::chrono::seconds{ss};
}

} // namespace litrepo
