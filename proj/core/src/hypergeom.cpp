#include "hgtail/hypergeom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hgtail/errors.hpp"
#include "hgtail/special_fn.hpp"

namespace hgtail {
namespace {

class NeumaierSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  void scale(double f) {
    sum_ *= f;
    comp_ *= f;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

constexpr double kRescaleAt = 1e280;
constexpr double kRescaleBy = 1e-280;
const double kLogRescale = std::log(kRescaleAt);

}  // namespace

HypergeomParams::HypergeomParams(std::int64_t population, std::int64_t successes,
                                 std::int64_t draws)
    : population_(population), successes_(successes), draws_(draws) {
  if (population < 1) {
    throw ValidationError("population must be at least 1, got " + std::to_string(population));
  }
  if (population > kMaxPopulation) {
    throw ValidationError("population exceeds the supported maximum of " +
                          std::to_string(kMaxPopulation));
  }
  if (successes < 0) throw ValidationError("successes must be non-negative");
  if (draws < 0) throw ValidationError("draws must be non-negative");
  if (successes > population) throw ValidationError("successes exceed population");
  if (draws > population) throw ValidationError("draws exceed population");
}

std::int64_t HypergeomParams::support_min() const {
  return std::max<std::int64_t>(0, draws_ + successes_ - population_);
}

std::int64_t HypergeomParams::support_max() const { return std::min(draws_, successes_); }

double HypergeomParams::mean() const {
  return static_cast<double>(draws_) * static_cast<double>(successes_) /
         static_cast<double>(population_);
}

std::int64_t HypergeomParams::mean_floor() const {
  return (draws_ * successes_) / population_;
}

bool HypergeomParams::mean_is_integral() const {
  return (draws_ * successes_) % population_ == 0;
}

double HypergeomParams::sampling_fraction() const {
  return static_cast<double>(draws_) / static_cast<double>(population_);
}

double HypergeomParams::success_fraction() const {
  return static_cast<double>(successes_) / static_cast<double>(population_);
}

std::string HypergeomParams::to_string() const {
  std::ostringstream os;
  os << "(N=" << population_ << ", K=" << successes_ << ", n=" << draws_ << ")";
  return os.str();
}

LogProb log_pmf(const HypergeomParams& params, std::int64_t k) {
  if (k < params.support_min() || k > params.support_max()) return LogProb::zero();
  const auto N = params.population();
  const auto K = params.successes();
  const auto n = params.draws();
  return LogProb::from_log(ln_binomial(K, k) + ln_binomial(N - K, n - k) -
                           ln_binomial(N, n));
}

LogProb exact_upper_tail(const HypergeomParams& params, std::int64_t d) {
  const auto lo = params.support_min();
  const auto hi = params.support_max();
  if (d <= lo) return LogProb::one();
  if (d > hi) return LogProb::zero();

  const double N = static_cast<double>(params.population());
  const double K = static_cast<double>(params.successes());
  const double n = static_cast<double>(params.draws());

  // Terms relative to f(hi), accumulated from the support maximum inward.
  // f(k-1)/f(k) = k (N-K-n+k) / ((K-k+1)(n-k+1)).
  NeumaierSum sum;
  double term = 1.0;
  double log_offset = log_pmf(params, hi).log();
  sum.add(term);
  for (std::int64_t k = hi; k > d; --k) {
    const double kd = static_cast<double>(k);
    term *= kd * (N - K - n + kd) / ((K - kd + 1.0) * (n - kd + 1.0));
    if (term > kRescaleAt) {
      term *= kRescaleBy;
      sum.scale(kRescaleBy);
      log_offset += kLogRescale;
    }
    sum.add(term);
  }
  return LogProb::from_log(log_offset + std::log(sum.value()));
}

LogProb exact_lower_tail(const HypergeomParams& params, std::int64_t d) {
  const HypergeomParams reflected(params.population(),
                                  params.population() - params.successes(), params.draws());
  return exact_upper_tail(reflected, params.draws() - d);
}

LogProb exact_tail(const TailQuery& query) {
  return query.direction == TailDirection::Upper
             ? exact_upper_tail(query.params, query.threshold)
             : exact_lower_tail(query.params, query.threshold);
}

}  // namespace hgtail
