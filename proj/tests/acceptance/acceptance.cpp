// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hgtail/bounds.hpp"
#include "hgtail/errors.hpp"
#include "hgtail/hypergeom.hpp"
#include "hgtail/special_fn.hpp"
#include "hgtail/sweep.hpp"
#include "hgtail/symmetry.hpp"
#include "hgtail/verify.hpp"
#include "oracle.hpp"

using namespace hgtail;

namespace {

struct Outcome {
  bool pass = true;
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> log;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    pass = false;
    ++violations;
    if (log.size() < 20) log.push_back(what());
  }
};

std::string q(std::int64_t N, std::int64_t K, std::int64_t n, std::int64_t d) {
  return "(N=" + std::to_string(N) + ", K=" + std::to_string(K) + ", n=" + std::to_string(n) +
         ", d=" + std::to_string(d) + ")";
}

std::string num(long double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

std::string brief(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::optional<double> bound_value(BoundMethod m, std::int64_t N, std::int64_t K, std::int64_t n,
                                  std::int64_t d) {
  const BoundResult r =
      evaluate_method(m, identity_rep({HypergeomParams(N, K, n), d, TailDirection::Upper}));
  if (!r.applicable) return std::nullopt;
  return r.linear_value;
}

std::string name(BoundMethod m) { return std::string(method_name(m)); }

constexpr double kSlack = 1e-12;

Outcome soundness() {
  Outcome o;
  for (int N = 1; N <= 40; ++N) {
    for (int K = 0; K <= N; ++K) {
      for (int n = 0; n <= N; ++n) {
        const HypergeomParams p(N, K, n);
        const std::int64_t lo = p.min_bound_threshold();
        const std::int64_t hi = std::min(n, K) + 1;
        for (std::int64_t d = lo; d <= hi; ++d) {
          const long double exact = oracle::upper_tail_exact(N, K, n, static_cast<int>(d));
          for (auto m : kBoundMethods) {
            const auto v = bound_value(m, N, K, n, d);
            if (!v) continue;
            o.expect(*v + kSlack >= exact, [&] {
              return name(m) + " " + q(N, K, n, d) + " bound " + num(*v) +
                     " < exact " + num(exact);
            });
          }
          const auto best = best_bound({p, d, TailDirection::Upper}, MethodSet::all()).best;
          o.expect(*best.linear_value + kSlack >= exact, [&] {
            return "best " + q(N, K, n, d) + " " + num(*best.linear_value) + " < exact " + num(exact);
          });
        }
      }
    }
  }
  return o;
}

Outcome beta_le_chernoff() {
  Outcome o;
  const std::pair<BoundMethod, BoundMethod> pairs[] = {
      {BoundMethod::BetaDirect, BoundMethod::ChernoffDirect},
      {BoundMethod::BetaSwapped, BoundMethod::ChernoffSwapped}};
  for (int N = 1; N <= 40; ++N) {
    for (int K = 0; K <= N; ++K) {
      for (int n = 0; n <= N; ++n) {
        const HypergeomParams p(N, K, n);
        for (std::int64_t d = p.min_bound_threshold(); d <= std::min(n, K) + 1; ++d) {
          for (auto [beta, chernoff] : pairs) {
            const auto b = bound_value(beta, N, K, n, d);
            const auto c = bound_value(chernoff, N, K, n, d);
            if (!b || !c) continue;
            o.expect(*b <= *c + kSlack, [&] {
              return name(beta) + " " + q(N, K, n, d) + " " + num(*b) + " > " +
                     name(chernoff) + " " + num(*c);
            });
          }
        }
      }
    }
  }
  return o;
}

Outcome swap_advantage() {
  Outcome o;
  const std::pair<BoundMethod, BoundMethod> pairs[] = {
      {BoundMethod::ChernoffSwapped, BoundMethod::ChernoffDirect},
      {BoundMethod::BetaSwapped, BoundMethod::BetaDirect}};
  for (int N = 1; N <= 40; ++N) {
    for (int K = 0; K <= N; ++K) {
      for (int n = K + 1; n <= N; ++n) {
        const HypergeomParams p(N, K, n);
        for (std::int64_t d = p.min_bound_threshold(); d <= std::min(n, K) + 1; ++d) {
          for (auto [sw, dir] : pairs) {
            const auto s = bound_value(sw, N, K, n, d);
            const auto t = bound_value(dir, N, K, n, d);
            if (!s || !t) continue;
            o.expect(*s <= *t + kSlack, [&] {
              return name(sw) + " " + q(N, K, n, d) + " " + num(*s) + " > " +
                     name(dir) + " " + num(*t);
            });
          }
        }
      }
    }
  }
  // The verify report must agree, and its violations are echoed verbatim.
  VerifyOptions opts;
  opts.max_population = 40;
  const VerifyReport report = run_verify(opts);
  const PropertyTally& tally = report.property("swap_advantage");
  o.expect(tally.violations == 0 && tally.checks > 0, [&] {
    return "verify swap_advantage reports " + std::to_string(tally.violations) + " violations";
  });
  for (const auto& line : tally.details) o.log.push_back("verify: " + line);
  return o;
}

Outcome symmetry_identities() {
  Outcome o;
  for (int N = 1; N <= 60; ++N) {
    for (int K = 0; K <= N; ++K) {
      for (int n = 0; n <= N; ++n) {
        const HypergeomParams p(N, K, n);
        const HypergeomParams swapped(N, n, K);
        const HypergeomParams comp(N, N - K, n);
        for (std::int64_t k = p.support_min(); k <= p.support_max(); ++k) {
          const double f = log_pmf(p, k).linear();
          const long double counted = oracle::pmf_exact(N, K, n, static_cast<int>(k));
          o.expect(std::fabs(f - counted) <= kSlack, [&] {
            return "pmf " + q(N, K, n, k) + " " + num(f) + " vs counting " + num(counted);
          });
          const double fs = log_pmf(swapped, k).linear();
          o.expect(std::fabs(f - fs) <= kSlack,
                   [&] { return "pmf swap " + q(N, K, n, k) + " " + num(f) + " vs " + num(fs); });
          const double fc = log_pmf(comp, n - k).linear();
          o.expect(std::fabs(f - fc) <= kSlack, [&] {
            return "pmf complement " + q(N, K, n, k) + " " + num(f) + " vs " + num(fc);
          });
        }
        for (std::int64_t d = p.min_bound_threshold(); d <= p.support_max() + 1; ++d) {
          const double exact = exact_upper_tail(p, d).linear();
          for (const auto& rep : representation_orbit({p, d, TailDirection::Upper})) {
            const double e = exact_upper_tail(rep.params, rep.threshold).linear();
            o.expect(std::fabs(exact - e) <= kSlack, [&] {
              return "orbit " + q(N, K, n, d) + " -> " + rep.chain_string() + " " + num(e) +
                     " vs " + num(exact);
            });
          }
        }
      }
    }
  }
  return o;
}

Outcome inc_beta_oracle() {
  Outcome o;
  std::uint64_t linear_checks = 0;
  for (int pi = 1; pi <= 99; ++pi) {
    const double p = pi / 100.0;
    for (std::int64_t n = 1; n <= 500; ++n) {
      const auto tails = oracle::binomial_upper_tails(n, static_cast<long double>(p));
      for (std::int64_t d = 1; d <= n; ++d) {
        const long double want = tails[d];
        const double a = static_cast<double>(d);
        const double b = static_cast<double>(n - d + 1);
        const double got_log = log_reg_inc_beta(p, a, b).log();
        o.expect(std::fabs(std::expm1(static_cast<long double>(got_log) - std::log(want))) <= 1e-10L,
                 [&] {
                   return "log I_" + num(p) + "(" + std::to_string(d) + "," +
                          std::to_string(n - d + 1) + ") = " + num(got_log) + " vs " +
                          num(std::log(want));
                 });
        if (want >= 1e-300L) {
          ++linear_checks;
          const double got = reg_inc_beta(p, a, b);
          o.expect(oracle::rel_close(got, want, 1e-10), [&] {
            return "I_" + num(p) + "(" + std::to_string(d) + "," + std::to_string(n - d + 1) +
                   ") = " + num(got) + " vs " + num(want);
          });
        }
      }
    }
  }
  // Spot-check the cumulative oracle against the direct sum.
  for (std::int64_t n : {1, 17, 250, 500}) {
    for (long double p : {0.01L, 0.37L, 0.99L}) {
      const auto tails = oracle::binomial_upper_tails(n, p);
      for (std::int64_t d = 1; d <= n; d += std::max<std::int64_t>(1, n / 7)) {
        const long double direct = oracle::binomial_upper_tail(n, d, p);
        o.expect(std::fabs(tails[d] / direct - 1.0L) <= 1e-15L,
                 [&] { return "oracle disagreement n=" + std::to_string(n); });
      }
    }
  }
  o.log.insert(o.log.begin(), std::to_string(linear_checks) + " linear-scale comparisons");
  return o;
}

Outcome worked_instance() {
  Outcome o;
  const BoundReport r = best_bound({HypergeomParams(10, 3, 6), 3, TailDirection::Upper},
                                   MethodSet::all());
  auto check = [&](const std::string& what, double got, double want) {
    o.expect(std::fabs(got - want) <= 1e-6 * std::fabs(want),
             [&] { return what + " " + num(got) + " vs " + num(want); });
  };
  o.expect(r.exact.has_value(), [] { return std::string("exact missing"); });
  if (r.exact) check("exact", r.exact->linear(), 1.0 / 6.0);
  // mpmath at 40 digits.
  const std::pair<BoundMethod, double> golden[] = {
      {BoundMethod::ChernoffDirect, 0.592704},
      {BoundMethod::ChernoffSwapped, 0.216},
      {BoundMethod::BetaDirect, 0.25569},
      {BoundMethod::BetaSwapped, 0.216},
      {BoundMethod::Serfling, 0.38289288597511202278},
  };
  for (auto [m, want] : golden) {
    bool found = false;
    for (const auto& res : r.results) {
      if (res.method != m || res.representation.transform_chain != std::vector{Transform::Identity}) {
        continue;
      }
      found = true;
      o.expect(res.applicable, [&] { return name(m) + " inapplicable"; });
      if (res.applicable) check(name(m), *res.linear_value, want);
    }
    o.expect(found, [&] { return name(m) + " missing"; });
  }
  check("best", *r.best.linear_value, 0.216);
  return o;
}

Outcome sweep_structure() {
  Outcome o;
  struct Case {
    std::int64_t N;
    double ratio;
    std::int64_t n;
  };
  const Case cases[] = {
      {1000, 0.02, 100},   {1000, 0.02, 500},   {1000, 0.05, 100},   {1000, 0.05, 500},
      {10000, 0.02, 1000}, {10000, 0.02, 5000}, {10000, 0.05, 1000}, {10000, 0.05, 5000},
  };
  const std::pair<BoundMethod, BoundMethod> pairs[] = {
      {BoundMethod::ChernoffSwapped, BoundMethod::ChernoffDirect},
      {BoundMethod::BetaSwapped, BoundMethod::BetaDirect}};
  for (const auto& c : cases) {
    SweepConfig cfg;
    cfg.population = c.N;
    cfg.ratio = c.ratio;
    cfg.draws = c.n;
    cfg.delta_min = 0.0;
    cfg.delta_max = 0.5;
    cfg.delta_steps = 201;
    const std::string label = "N=" + std::to_string(c.N) + " K/N=" + brief(c.ratio) +
                              " n=" + std::to_string(c.n);
    o.expect(c.n > cfg.successes(), [&] { return label + ": n <= K"; });
    const auto t0 = std::chrono::steady_clock::now();
    const auto records = run_sweep(cfg, 1);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.expect(secs < 60.0, [&] { return label + ": took " + brief(secs) + " s"; });
    o.log.push_back(label + ": " + std::to_string(records.size()) + " rows in " + brief(secs) + " s");
    for (const auto& r : records) {
      const std::string row = label + " delta=" + num(r.delta) + " d=" + std::to_string(r.threshold);
      o.expect(r.exact && r.best, [&] { return row + ": missing exact or best"; });
      if (!r.exact || !r.best) continue;
      o.expect(*r.exact <= *r.best * (1 + kSlack),
               [&] { return row + ": exact " + num(*r.exact) + " > best " + num(*r.best); });
      for (std::size_t i = 0; i < r.bounds.size(); ++i) {
        if (!r.bounds[i]) continue;
        o.expect(*r.best <= *r.bounds[i] * (1 + kSlack), [&] {
          return row + ": best " + num(*r.best) + " > " + name(kBoundMethods[i]) + " " +
                 num(*r.bounds[i]);
        });
      }
      for (auto [sw, dir] : pairs) {
        const auto s = r.bound(sw);
        const auto t = r.bound(dir);
        if (!s || !t) continue;
        o.expect(*s <= *t * (1 + kSlack), [&] {
          return row + ": " + name(sw) + " " + num(*s) + " > " + name(dir) + " " +
                 num(*t);
        });
      }
    }
  }
  return o;
}

Outcome inversion() {
  Outcome o;
  std::mt19937_64 rng(20261014);
  int cases = 0;
  auto best_at = [](const HypergeomParams& p, std::int64_t d) -> long double {
    try {
      return best_bound({p, d, TailDirection::Upper}, MethodSet::all(), {.include_exact = false})
          .best.linear_value.value();
    } catch (const NoApplicableMethodError&) {
      return 1.0L;
    }
  };
  while (cases < 100) {
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(2, 20000)(rng);
    const std::int64_t K = std::uniform_int_distribution<std::int64_t>(1, N)(rng);
    const std::int64_t n = std::uniform_int_distribution<std::int64_t>(1, N)(rng);
    const double eps = std::pow(10.0, -std::uniform_real_distribution<double>(0.0, 15.0)(rng));
    const HypergeomParams p(N, K, n);
    if (p.min_bound_threshold() > p.support_max() + 1) continue;
    ++cases;
    const InversionResult r = invert_threshold(p, eps, MethodSet::all());
    const std::string label = p.to_string() + " eps=" + num(eps) + " -> d=" + std::to_string(r.threshold);
    o.expect(r.threshold >= p.min_bound_threshold() && r.threshold <= p.support_max() + 1,
             [&] { return label + ": outside the admissible range"; });
    const long double at = r.threshold > p.support_max() && r.beyond_support ? 0.0L
                                                                             : best_at(p, r.threshold);
    o.expect(at <= eps, [&] { return label + ": bound " + num(at) + " > eps"; });
    if (r.threshold > p.min_bound_threshold()) {
      const long double before = best_at(p, r.threshold - 1);
      o.expect(before > eps, [&] { return label + ": bound at d-1 " + num(before) + " <= eps"; });
    }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"soundness: bounds >= exact tail, N <= 40", soundness},
      {"beta <= chernoff on identical parametrization, N <= 40", beta_le_chernoff},
      {"swap advantage for n > K, N <= 40", swap_advantage},
      {"symmetry identities and orbit tails, N <= 60", symmetry_identities},
      {"incomplete beta vs binomial tail sum, n <= 500", inc_beta_oracle},
      {"worked instance (10, 3, 6, d=3)", worked_instance},
      {"sweep structure at N = 1000 and N = 10000", sweep_structure},
      {"threshold inversion consistency, 100 cases", inversion},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.log.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %s  [checks=%llu violations=%llu, %.2f s]\n", o.pass ? "PASS" : "FAIL", c.name,
                static_cast<unsigned long long>(o.checks),
                static_cast<unsigned long long>(o.violations), secs);
    for (const auto& line : o.log) std::printf("      %s\n", line.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
