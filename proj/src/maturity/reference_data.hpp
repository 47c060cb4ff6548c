#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "common/types.hpp"
#include "maturity/maturity.hpp"

namespace litrepo::maturity {

/// One reference classification: the repository, its counts, the tier it
/// was given and the exact report line printed for it.
struct ReferenceRow {
  std::string_view owner;
  std::string_view name;
  std::uint64_t stars;
  std::uint64_t forks;
  std::uint64_t open_issues;
  std::uint64_t contributors;
  MaturityTier tier;
  std::string_view line;
};

/// The 23 reference classifications, in reference order.
std::span<const ReferenceRow> reference_rows();

/// The 31 reference repository URLs, in reference order.
std::span<const std::string_view> reference_urls();

RepoMetrics metrics_of(const ReferenceRow &row);
std::vector<OracleRow> reference_oracle();

} // namespace litrepo::maturity
