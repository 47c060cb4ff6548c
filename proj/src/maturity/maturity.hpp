#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "common/types.hpp"

namespace litrepo::maturity {

/// Star thresholds separating the tiers.
struct TierRule {
  std::uint64_t medium_min_stars = 30;
  std::uint64_t high_min_stars = 100;

  /// Requires 0 < medium_min_stars < high_min_stars.
  void validate() const;
};

/// High at or above high_min_stars, Medium at or above medium_min_stars,
/// otherwise Low. Other counts are carried but do not move the tier.
MaturityTier classify(const RepoMetrics &metrics, const TierRule &rule);

struct OracleRow {
  RepoMetrics metrics;
  MaturityTier expected = MaturityTier::Low;
};

struct Mismatch {
  std::size_t index = 0;
  RepoMetrics metrics;
  MaturityTier expected = MaturityTier::Low;
  MaturityTier actual = MaturityTier::Low;
};

/// Rows of `oracle` that `rule` classifies differently. Empty oracle is a
/// ValidationError.
std::vector<Mismatch> calibrate_check(const TierRule &rule, std::span<const OracleRow> oracle);

} // namespace litrepo::maturity
