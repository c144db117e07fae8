#pragma once

#include <cstdint>
#include <string>

#include "hgtail/log_prob.hpp"

namespace hgtail {

/// Largest population accepted by HypergeomParams.
inline constexpr std::int64_t kMaxPopulation = 1'000'000'000;

/// Hypergeometric(N, K, n): number of marked items in n draws without
/// replacement from a population of N containing K marked items.
class HypergeomParams {
 public:
  /// The degenerate Hypergeometric(1, 0, 0).
  HypergeomParams() = default;
  /// Throws ValidationError unless 1 <= N <= kMaxPopulation, 0 <= K <= N and
  /// 0 <= n <= N.
  HypergeomParams(std::int64_t population, std::int64_t successes, std::int64_t draws);

  std::int64_t population() const { return population_; }
  std::int64_t successes() const { return successes_; }
  std::int64_t draws() const { return draws_; }

  std::int64_t support_min() const;
  std::int64_t support_max() const;
  std::int64_t support_size() const { return support_max() - support_min() + 1; }

  /// nK/N.
  double mean() const;
  /// floor(nK/N), computed exactly.
  std::int64_t mean_floor() const;
  /// True when nK/N is an integer.
  bool mean_is_integral() const;

  double sampling_fraction() const;  // n/N
  double success_fraction() const;   // K/N

  /// Smallest threshold d accepted by the bounds: floor(nK/N) + 1.
  std::int64_t min_bound_threshold() const { return mean_floor() + 1; }

  std::string to_string() const;

  friend bool operator==(const HypergeomParams&, const HypergeomParams&) = default;
  friend auto operator<=>(const HypergeomParams&, const HypergeomParams&) = default;

 private:
  std::int64_t population_ = 1;
  std::int64_t successes_ = 0;
  std::int64_t draws_ = 0;
};

enum class TailDirection { Upper, Lower };

/// Pr[X >= d] (Upper) or Pr[X <= d] (Lower). The threshold may lie outside
/// the support.
struct TailQuery {
  HypergeomParams params;
  std::int64_t threshold;
  TailDirection direction = TailDirection::Upper;
};

/// ln Pr[X = k]; negative infinity outside the support.
LogProb log_pmf(const HypergeomParams& params, std::int64_t k);

/// ln Pr[X >= d], exact up to floating-point rounding.
LogProb exact_upper_tail(const HypergeomParams& params, std::int64_t d);

/// ln Pr[X <= d], via n - X ~ Hypergeometric(N, N - K, n).
LogProb exact_lower_tail(const HypergeomParams& params, std::int64_t d);

/// Dispatches on query.direction.
LogProb exact_tail(const TailQuery& query);

}  // namespace hgtail
