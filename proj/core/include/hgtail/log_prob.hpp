#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <numbers>

namespace hgtail {

/// Probability carried on the natural-log scale. Negative infinity encodes
/// probability zero; values are never positive.
class LogProb {
 public:
  constexpr LogProb() = default;

  /// Clamps tiny positive rounding excursions to 0 (probability 1).
  static LogProb from_log(double log_value) {
    if (std::isnan(log_value)) return LogProb(log_value);
    return LogProb(log_value > 0.0 ? 0.0 : log_value);
  }
  static LogProb from_linear(double p) {
    if (p <= 0.0) return zero();
    return from_log(std::log(p));
  }
  static constexpr LogProb zero() {
    return LogProb(-std::numeric_limits<double>::infinity());
  }
  static constexpr LogProb one() { return LogProb(0.0); }

  constexpr double log() const { return value_; }
  double log10() const { return value_ / std::numbers::ln10; }
  double linear() const { return std::exp(value_); }
  constexpr bool is_zero() const {
    return value_ == -std::numeric_limits<double>::infinity();
  }
  constexpr bool is_one() const { return value_ == 0.0; }

  /// 1 - p, evaluated without cancellation when p is small.
  LogProb complement() const {
    if (value_ > -std::numbers::ln2) return from_log(std::log(-std::expm1(value_)));
    return from_log(std::log1p(-std::exp(value_)));
  }

  friend constexpr auto operator<=>(LogProb, LogProb) = default;

 private:
  constexpr explicit LogProb(double v) : value_(v) {}
  double value_ = -std::numeric_limits<double>::infinity();
};

}  // namespace hgtail
