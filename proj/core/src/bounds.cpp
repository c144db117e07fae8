#include "hgtail/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "hgtail/errors.hpp"
#include "hgtail/special_fn.hpp"

namespace hgtail {
namespace {

std::string below_regime_message(const HypergeomParams& p, std::int64_t d) {
  std::ostringstream os;
  os << "threshold d=" << d << " is below the mean+1 regime for " << p.to_string()
     << ": bounds require d >= floor(nK/N) + 1 = " << p.min_bound_threshold();
  return os.str();
}

// Result of a formula evaluation before it is attached to a representation.
struct Evaluation {
  bool applicable = false;
  LogProb value;
  bool degenerate = false;
  std::string note;

  static Evaluation of(LogProb v) { return {true, v, false, {}}; }
  static Evaluation empty_support() { return {true, LogProb::zero(), true, {}}; }
  static Evaluation na(std::string why) { return {false, LogProb::zero(), false, std::move(why)}; }
};

// Binomial(trials, p) bounds on Pr[X >= d]; `trials` is n for direct
// methods and K for swapped ones, p the matching fraction.
Evaluation chernoff_eval(std::int64_t trials, double p, std::int64_t d) {
  if (d > trials) return Evaluation::empty_support();
  const double x = static_cast<double>(d) / static_cast<double>(trials);
  return Evaluation::of(
      LogProb::from_log(-static_cast<double>(trials) * kl_bernoulli(x, p)));
}

Evaluation beta_eval(std::int64_t trials, double p, std::int64_t d) {
  return Evaluation::of(log_reg_inc_beta(p, static_cast<double>(d),
                                         static_cast<double>(trials - d + 1)));
}

// The beta bounds need the literal d >= nK/N + 1; between nK/N and nK/N + 1
// they can fall below the exact tail.
bool beta_regime(const HypergeomParams& p, std::int64_t d) {
  return (d - 1) * p.population() >= p.draws() * p.successes();
}

Evaluation beta_regime_na(const HypergeomParams& p, std::int64_t d) {
  return Evaluation::na("beta bounds require d >= nK/N + 1 = " + std::to_string(p.mean() + 1.0) +
                        " (d=" + std::to_string(d) + " for " + p.to_string() + ")");
}

Evaluation evaluate(BoundMethod method, const HypergeomParams& p, std::int64_t d) {
  if (d < p.min_bound_threshold()) return Evaluation::na(below_regime_message(p, d));
  const auto N = p.population();
  const auto K = p.successes();
  const auto n = p.draws();
  const bool is_beta = method == BoundMethod::BetaDirect || method == BoundMethod::BetaSwapped;
  if (is_beta && !beta_regime(p, d)) return beta_regime_na(p, d);
  switch (method) {
    case BoundMethod::ChernoffDirect:
      return chernoff_eval(n, p.success_fraction(), d);
    case BoundMethod::ChernoffSwapped:
      return chernoff_eval(K, p.sampling_fraction(), d);
    case BoundMethod::BetaDirect:
      if (d > n) {
        return Evaluation::na("beta bound requires d <= n (d=" + std::to_string(d) +
                              ", n=" + std::to_string(n) + ")");
      }
      return beta_eval(n, p.success_fraction(), d);
    case BoundMethod::BetaSwapped:
      if (d > K) return Evaluation::empty_support();
      return beta_eval(K, p.sampling_fraction(), d);
    case BoundMethod::Serfling: {
      if (n == 0) return Evaluation::na("Serfling bound requires n >= 1");
      // delta = d/n - K/N = (dN - nK) / (nN), numerator exact in integers.
      const double nd = static_cast<double>(n);
      const double Nd = static_cast<double>(N);
      const double delta = static_cast<double>(d * N - n * K) / (nd * Nd);
      const double correction = 1.0 - (nd - 1.0) / Nd;
      return Evaluation::of(LogProb::from_log(-2.0 * nd * delta * delta / correction));
    }
    case BoundMethod::BestCanonical:
    case BoundMethod::Exact:
      break;
  }
  return Evaluation::na(std::string(method_name(method)) + " is not a single bound method");
}

BoundResult to_result(BoundMethod method, const SymmetryRep& rep, const Evaluation& e) {
  BoundResult r;
  r.method = method;
  r.source = method;
  r.representation = rep;
  r.applicable = e.applicable;
  r.degenerate_support = e.degenerate;
  r.note = e.note;
  if (e.applicable) {
    r.log_value = e.value;
    r.linear_value = e.value.linear();
  }
  return r;
}

BoundResult evaluate_or_throw(BoundMethod method, const HypergeomParams& params,
                              std::int64_t d) {
  const Evaluation e = evaluate(method, params, d);
  if (!e.applicable) throw PreconditionError(e.note);
  return to_result(method, identity_rep({params, d, TailDirection::Upper}), e);
}

int priority(BoundMethod m) {
  const auto it = std::find(kBoundMethodsByPriority.begin(), kBoundMethodsByPriority.end(), m);
  return static_cast<int>(it - kBoundMethodsByPriority.begin());
}

// Strict "a is preferred over b" among applicable results.
bool preferred(const BoundResult& a, const BoundResult& b) {
  if (*a.log_value != *b.log_value) return *a.log_value < *b.log_value;
  if (priority(a.method) != priority(b.method)) return priority(a.method) < priority(b.method);
  return a.representation.transform_chain < b.representation.transform_chain;
}

TailQuery as_upper(const TailQuery& q) {
  if (q.direction == TailDirection::Upper) return q;
  const auto& p = q.params;
  return {HypergeomParams(p.population(), p.population() - p.successes(), p.draws()),
          p.draws() - q.threshold, TailDirection::Upper};
}

}  // namespace

std::string_view method_name(BoundMethod m) {
  switch (m) {
    case BoundMethod::ChernoffDirect: return "chernoff_direct";
    case BoundMethod::ChernoffSwapped: return "chernoff_swapped";
    case BoundMethod::BetaDirect: return "beta_direct";
    case BoundMethod::BetaSwapped: return "beta_swapped";
    case BoundMethod::Serfling: return "serfling";
    case BoundMethod::BestCanonical: return "best";
    case BoundMethod::Exact: return "exact";
  }
  return "unknown";
}

std::optional<BoundMethod> parse_method(std::string_view name) {
  for (auto m : {BoundMethod::ChernoffDirect, BoundMethod::ChernoffSwapped,
                 BoundMethod::BetaDirect, BoundMethod::BetaSwapped, BoundMethod::Serfling,
                 BoundMethod::BestCanonical, BoundMethod::Exact}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

MethodSet MethodSet::parse(std::string_view list) {
  MethodSet set;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    std::string_view item = list.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    if (item == "all") {
      set = all();
    } else if (!item.empty()) {
      const auto m = parse_method(item);
      if (!m || *m == BoundMethod::BestCanonical || *m == BoundMethod::Exact) {
        throw std::invalid_argument("unknown bound method '" + std::string(item) + "'");
      }
      set.insert(*m);
    }
    pos = comma + 1;
  }
  if (set.empty()) throw std::invalid_argument("method list is empty");
  return set;
}

std::vector<BoundMethod> MethodSet::members() const {
  std::vector<BoundMethod> out;
  for (auto m : kBoundMethods) {
    if (contains(m)) out.push_back(m);
  }
  return out;
}

BoundResult chernoff_upper(const HypergeomParams& params, std::int64_t d) {
  return evaluate_or_throw(BoundMethod::ChernoffDirect, params, d);
}

BoundResult chernoff_swapped(const HypergeomParams& params, std::int64_t d) {
  return evaluate_or_throw(BoundMethod::ChernoffSwapped, params, d);
}

BoundResult beta_upper(const HypergeomParams& params, std::int64_t d) {
  return evaluate_or_throw(BoundMethod::BetaDirect, params, d);
}

BoundResult beta_swapped(const HypergeomParams& params, std::int64_t d) {
  return evaluate_or_throw(BoundMethod::BetaSwapped, params, d);
}

BoundResult serfling_upper(const HypergeomParams& params, std::int64_t d) {
  return evaluate_or_throw(BoundMethod::Serfling, params, d);
}

BoundResult evaluate_method(BoundMethod method, const SymmetryRep& rep) {
  return to_result(method, rep, evaluate(method, rep.params, rep.threshold));
}

BoundReport best_bound(const TailQuery& query, const MethodSet& methods,
                       const ReportOptions& options) {
  BoundReport report{query, as_upper(query), {}, std::nullopt, {}};
  const TailQuery& upper = report.upper_query;
  if (upper.threshold < upper.params.min_bound_threshold()) {
    throw PreconditionError(below_regime_message(upper.params, upper.threshold));
  }

  const auto orbit = representation_orbit(upper);
  const BoundResult* best = nullptr;
  for (BoundMethod m : methods.members()) {
    for (const auto& rep : orbit) report.results.push_back(evaluate_method(m, rep));
  }
  for (const auto& r : report.results) {
    if (r.applicable && (best == nullptr || preferred(r, *best))) best = &r;
  }
  if (best == nullptr) {
    throw NoApplicableMethodError("no requested bound method applies to threshold d=" +
                                  std::to_string(upper.threshold) + " for " +
                                  upper.params.to_string());
  }
  report.best = *best;
  report.best.method = BoundMethod::BestCanonical;
  report.best.source = best->method;

  if (options.include_exact && upper.params.support_size() <= options.exact_support_limit) {
    report.exact = exact_upper_tail(upper.params, upper.threshold);
  }
  return report;
}

InversionResult invert_threshold(const HypergeomParams& params, double epsilon,
                                 const MethodSet& methods) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    throw DomainError("epsilon must lie in (0, 1], got " + std::to_string(epsilon));
  }
  const ReportOptions no_exact{.include_exact = false};
  auto bound_at = [&](std::int64_t d) -> std::optional<LogProb> {
    try {
      return *best_bound({params, d, TailDirection::Upper}, methods, no_exact).best.log_value;
    } catch (const NoApplicableMethodError&) {
      return std::nullopt;
    }
  };
  auto meets = [&](const std::optional<LogProb>& b) { return b && b->linear() <= epsilon; };

  // Invariant: every d < lo fails, hi satisfies (hi = cap stands in for the
  // empty tail beyond the support).
  std::int64_t lo = params.min_bound_threshold();
  const std::int64_t cap = params.support_max() + 1;
  std::int64_t hi = cap;
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (meets(bound_at(mid))) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (hi == cap) {
    const auto b = bound_at(cap);
    if (meets(b)) return {cap, *b, true};
    return {cap, LogProb::zero(), true};
  }
  return {hi, *bound_at(hi), false};
}

}  // namespace hgtail
