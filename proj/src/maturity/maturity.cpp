#include "maturity/maturity.hpp"

#include "common/errors.hpp"

namespace litrepo::maturity {

void TierRule::validate() const {
  if (medium_min_stars == 0) {
    throw ValidationError("TierRule: medium_min_stars must be > 0");
  }
  if (medium_min_stars >= high_min_stars) {
    throw ValidationError("TierRule: medium_min_stars must be < high_min_stars");
  }
}

MaturityTier classify(const RepoMetrics &metrics, const TierRule &rule) {
  if (metrics.stars >= rule.high_min_stars) {
    return MaturityTier::High;
  }
  if (metrics.stars >= rule.medium_min_stars) {
    return MaturityTier::Medium;
  }
  return MaturityTier::Low;
}

std::vector<Mismatch> calibrate_check(const TierRule &rule, std::span<const OracleRow> oracle) {
  rule.validate();
  if (oracle.empty()) {
    throw ValidationError("calibrate_check: oracle must be non-empty");
  }
  std::vector<Mismatch> mismatches;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    auto actual = classify(oracle[i].metrics, rule);
    if (actual != oracle[i].expected) {
      mismatches.push_back({i, oracle[i].metrics, oracle[i].expected, actual});
    }
  }
  return mismatches;
}

} // namespace litrepo::maturity
