#include "hgtail/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hgtail/bounds.hpp"
#include "hgtail/errors.hpp"
#include "hgtail/hypergeom.hpp"
#include "hgtail/symmetry.hpp"

namespace hgtail {
namespace {

enum Prop : std::size_t {
  kSoundness,
  kBetaBelowChernoff,
  kMonotonicity,
  kPmfNormalization,
  kPmfSwapIdentity,
  kPmfComplementIdentity,
  kTailComplement,
  kOrbitConsistency,
  kSwapAdvantage,
  kPropCount,
};

constexpr std::array<const char*, kPropCount> kPropNames = {
    "soundness",          "beta_le_chernoff",         "monotonicity",
    "pmf_normalization",  "pmf_swap_identity",        "pmf_complement_identity",
    "tail_complement",    "orbit_tail_consistency",   "swap_advantage",
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Tallies {
 public:
  explicit Tallies(std::size_t max_details) : max_details_(max_details) {
    for (std::size_t i = 0; i < kPropCount; ++i) {
      props_[i].name = kPropNames[i];
      props_[i].soundness = i != kSwapAdvantage;
    }
  }

  void check(Prop p, bool ok, const std::string& what = {}) {
    ++props_[p].checks;
    if (ok) return;
    ++props_[p].violations;
    if (props_[p].details.size() < max_details_) props_[p].details.push_back(what);
  }
  template <class F>
  void check(Prop p, bool ok, F&& describe) {
    ++props_[p].checks;
    if (ok) return;
    ++props_[p].violations;
    if (props_[p].details.size() < max_details_) props_[p].details.push_back(describe());
  }

  void merge(const Tallies& other) {
    for (std::size_t i = 0; i < kPropCount; ++i) {
      auto& mine = props_[i];
      const auto& theirs = other.props_[i];
      mine.checks += theirs.checks;
      mine.violations += theirs.violations;
      for (const auto& d : theirs.details) {
        if (mine.details.size() < max_details_) mine.details.push_back(d);
      }
    }
  }

  std::vector<PropertyTally> release() { return {props_.begin(), props_.end()}; }

 private:
  std::size_t max_details_;
  std::array<PropertyTally, kPropCount> props_;
};

// Log-scale equality with matching infinities.
bool log_equal(LogProb a, LogProb b, double tol) {
  if (a.is_zero() || b.is_zero()) return a == b;
  return std::fabs(a.log() - b.log()) <= tol;
}

std::string where(const HypergeomParams& p, std::int64_t d) {
  return p.to_string() + " d=" + std::to_string(d);
}

void verify_triple(const HypergeomParams& p, double tol, Tallies& t) {
  const auto N = p.population();
  const auto K = p.successes();
  const auto n = p.draws();
  const auto lo = p.support_min();
  const auto hi = p.support_max();

  // PMF identities.
  const HypergeomParams swapped(N, n, K);
  const HypergeomParams complemented(N, N - K, N - n);
  double total = 0.0;
  for (std::int64_t k = -1; k <= N + 1; ++k) {
    const LogProb f = log_pmf(p, k);
    if (!f.is_zero()) total += f.linear();
    const LogProb fs = log_pmf(swapped, k);
    t.check(kPmfSwapIdentity, log_equal(f, fs, tol), [&] {
      return p.to_string() + " k=" + std::to_string(k) + ": ln f=" + fmt(f.log()) +
             " vs swapped " + fmt(fs.log());
    });
    const LogProb fc = log_pmf(complemented, N - n - K + k);
    t.check(kPmfComplementIdentity, log_equal(f, fc, tol), [&] {
      return p.to_string() + " k=" + std::to_string(k) + ": ln f=" + fmt(f.log()) +
             " vs complement " + fmt(fc.log());
    });
  }
  t.check(kPmfNormalization, std::fabs(total - 1.0) <= tol,
          [&] { return p.to_string() + ": total mass " + fmt(total); });

  // Exact tails.
  std::vector<double> exact;  // exact[d] = Pr[X >= d], d = 0 .. hi + 1
  for (std::int64_t d = 0; d <= hi + 1; ++d) {
    exact.push_back(exact_upper_tail(p, d).linear());
  }
  for (std::int64_t d = lo; d <= hi + 1; ++d) {
    const double up = exact[d];
    const double low = exact_lower_tail(p, d - 1).linear();
    t.check(kTailComplement, std::fabs(up + low - 1.0) <= tol, [&] {
      return where(p, d) + ": upper=" + fmt(up) + " + lower(d-1)=" + fmt(low);
    });
  }
  for (std::int64_t d = 0; d <= hi + 1; ++d) {
    const TailQuery q{p, d, TailDirection::Upper};
    for (const auto& rep : representation_orbit(q)) {
      const double v = exact_upper_tail(rep.params, rep.threshold).linear();
      t.check(kOrbitConsistency, std::fabs(v - exact[d]) <= tol, [&] {
        return where(p, d) + " via " + rep.chain_string() + ": " + fmt(v) + " vs " +
               fmt(exact[d]);
      });
    }
    if (d > 0) {
      t.check(kMonotonicity, exact[d] <= exact[d - 1] + tol, [&] {
        return "exact " + where(p, d) + ": " + fmt(exact[d]) + " > " + fmt(exact[d - 1]);
      });
    }
  }

  // Bounds over the regime floor(nK/N)+1 <= d <= min(n,K)+1.
  std::array<std::optional<double>, 5> previous{};
  for (std::int64_t d = p.min_bound_threshold(); d <= hi + 1; ++d) {
    const SymmetryRep rep = identity_rep({p, d, TailDirection::Upper});
    std::array<std::optional<double>, 5> value{};
    for (std::size_t i = 0; i < kBoundMethods.size(); ++i) {
      const BoundResult r = evaluate_method(kBoundMethods[i], rep);
      if (r.applicable) value[i] = r.linear_value;
    }
    const double ex = exact[static_cast<std::size_t>(d)];

    for (std::size_t i = 0; i < value.size(); ++i) {
      if (!value[i]) continue;
      const std::string_view name = method_name(kBoundMethods[i]);
      t.check(kSoundness, *value[i] >= ex - tol, [&] {
        return std::string(name) + " " + where(p, d) + ": bound=" + fmt(*value[i]) +
               " < exact=" + fmt(ex);
      });
      if (previous[i]) {
        t.check(kMonotonicity, *value[i] <= *previous[i] + tol, [&] {
          return std::string(name) + " " + where(p, d) + ": " + fmt(*value[i]) + " > " +
                 fmt(*previous[i]) + " at d-1";
        });
      }
    }

    auto pair_check = [&](Prop prop, std::size_t smaller, std::size_t larger) {
      if (!value[smaller] || !value[larger]) return;
      t.check(prop, *value[smaller] <= *value[larger] + tol, [&] {
        return std::string(method_name(kBoundMethods[smaller])) + "=" + fmt(*value[smaller]) +
               " > " + std::string(method_name(kBoundMethods[larger])) + "=" +
               fmt(*value[larger]) + " at " + where(p, d);
      });
    };
    // kBoundMethods: chernoff_direct, chernoff_swapped, beta_direct, beta_swapped, serfling
    pair_check(kBetaBelowChernoff, 2, 0);
    pair_check(kBetaBelowChernoff, 3, 1);
    if (n > K) {
      pair_check(kSwapAdvantage, 1, 0);
      pair_check(kSwapAdvantage, 3, 2);
    }
    previous = value;
  }
}

void verify_population(std::int64_t N, double tol, Tallies& t) {
  for (std::int64_t K = 0; K <= N; ++K) {
    for (std::int64_t n = 0; n <= N; ++n) verify_triple(HypergeomParams(N, K, n), tol, t);
  }
}

}  // namespace

const PropertyTally& VerifyReport::property(const std::string& name) const {
  for (const auto& p : properties) {
    if (p.name == name) return p;
  }
  throw std::out_of_range("no verification property named " + name);
}

std::uint64_t VerifyReport::soundness_violations() const {
  std::uint64_t total = 0;
  for (const auto& p : properties) {
    if (p.soundness) total += p.violations;
  }
  return total;
}

std::uint64_t VerifyReport::observation_violations() const {
  std::uint64_t total = 0;
  for (const auto& p : properties) {
    if (!p.soundness) total += p.violations;
  }
  return total;
}

int VerifyReport::exit_code(bool strict) const {
  if (soundness_violations() > 0) return 1;
  if (strict && observation_violations() > 0) return 1;
  return 0;
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.max_population < 1) {
    throw ValidationError("max-population must be at least 1");
  }
  if (options.max_population > 2000) {
    throw ValidationError("max-population above 2000 is not supported by the exhaustive grid");
  }
  const auto M = options.max_population;
  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(M)));

  // One tally per population, merged in grid order.
  std::vector<Tallies> per_population(static_cast<std::size_t>(M), Tallies(options.max_details));
  auto work = [&](unsigned w) {
    for (std::int64_t N = 1 + w; N <= M; N += workers) {
      verify_population(N, options.tolerance, per_population[static_cast<std::size_t>(N - 1)]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  Tallies total(options.max_details);
  for (const auto& t : per_population) total.merge(t);
  return {M, total.release()};
}

void write_verify_summary(std::ostream& out, const VerifyReport& report) {
  out << "exhaustive grid: 1 <= N <= " << report.max_population << "\n";
  for (const auto& p : report.properties) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-26s %-11s checks=%-10llu violations=%llu\n",
                  p.name.c_str(), p.soundness ? "[soundness]" : "[observed]",
                  static_cast<unsigned long long>(p.checks),
                  static_cast<unsigned long long>(p.violations));
    out << line;
    for (const auto& d : p.details) out << "    violation: " << d << "\n";
    if (p.violations > p.details.size()) {
      out << "    ... " << (p.violations - p.details.size()) << " more not shown\n";
    }
  }
  out << "soundness violations: " << report.soundness_violations() << "\n";
  out << "swap-advantage violations: " << report.observation_violations() << "\n";
}

}  // namespace hgtail
