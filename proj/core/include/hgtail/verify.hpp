#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hgtail {

struct VerifyOptions {
  std::int64_t max_population = 40;
  unsigned threads = 1;
  /// Linear-scale slack for every comparison.
  double tolerance = 1e-12;
  /// Violation descriptions retained per property. Counts are always exact.
  std::size_t max_details = 1000;
};

struct PropertyTally {
  std::string name;
  /// Soundness properties decide the exit status; the others are empirical
  /// observations reported separately.
  bool soundness = true;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> details;
};

struct VerifyReport {
  std::int64_t max_population = 0;
  std::vector<PropertyTally> properties;

  const PropertyTally& property(const std::string& name) const;
  std::uint64_t soundness_violations() const;
  std::uint64_t observation_violations() const;
  /// 0 when sound (and, under strict, observation-clean); 1 otherwise.
  int exit_code(bool strict) const;
};

/// Runs the invariant battery over every (N, K, n) with 1 <= N <= max_population:
/// bound soundness against the exact tail, beta <= Chernoff on the same
/// parametrization, monotonicity in d, PMF swap and complement identities,
/// normalization, orbit and tail-complement consistency, and the swap
/// advantage for n > K. Throws ValidationError when max_population < 1.
VerifyReport run_verify(const VerifyOptions& options);

void write_verify_summary(std::ostream& out, const VerifyReport& report);

}  // namespace hgtail
