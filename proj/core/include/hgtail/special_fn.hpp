#pragma once

#include <cstdint>

#include "hgtail/log_prob.hpp"

namespace hgtail {

/// ln Gamma(x) for x > 0. Rational approximations below 3, Lanczos sum
/// (g = 6.0246800407767296) above. Relative error below 1e-13 on [0.5, 1e6].
/// Throws DomainError for x <= 0 or NaN.
double ln_gamma(double x);

/// ln C(m, k). Exact 0 at k = 0 and k = m; symmetric in k <-> m - k by
/// construction. Throws DomainError unless 0 <= k <= m.
double ln_binomial(std::int64_t m, std::int64_t k);

/// Bernoulli Kullback-Leibler divergence D(x || y) with 0 ln 0 = 0.
/// Returns +inf when x > 0 and y = 0, or x < 1 and y = 1.
double kl_bernoulli(double x, double y);

/// Regularized incomplete beta I_x(a, b), natural-log scale.
///
/// Continued fraction by the modified Lentz method; when x exceeds
/// (a + 1) / (a + b + 2) the reflection I_x(a, b) = 1 - I_{1-x}(b, a) is used.
/// Throws DomainError for x outside [0, 1] or non-positive a, b, and
/// ConvergenceError if the fraction does not settle within
/// kIncBetaMaxIterations.
LogProb log_reg_inc_beta(double x, double a, double b);

/// Linear-scale convenience wrapper over log_reg_inc_beta.
double reg_inc_beta(double x, double a, double b);

inline constexpr int kIncBetaMaxIterations = 500;
inline constexpr double kIncBetaTolerance = 1e-15;

}  // namespace hgtail
