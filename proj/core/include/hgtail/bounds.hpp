#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgtail/hypergeom.hpp"
#include "hgtail/log_prob.hpp"
#include "hgtail/symmetry.hpp"

namespace hgtail {

enum class BoundMethod {
  ChernoffDirect,   // exp[-n D(d/n || K/N)]
  ChernoffSwapped,  // exp[-K D(d/K || n/N)]
  BetaDirect,       // I_{K/N}(d, n-d+1)
  BetaSwapped,      // I_{n/N}(d, K-d+1)
  Serfling,         // exp(-2 n delta^2 / (1 - (n-1)/N)), delta = d/n - K/N
  BestCanonical,    // minimum over methods and orbit representations
  Exact,            // exact tail, not a bound
};

/// The five methods that produce bound values, in tie-break priority order.
inline constexpr std::array<BoundMethod, 5> kBoundMethodsByPriority = {
    BoundMethod::BetaSwapped, BoundMethod::BetaDirect, BoundMethod::ChernoffSwapped,
    BoundMethod::ChernoffDirect, BoundMethod::Serfling};

/// Canonical column order: chernoff_direct, chernoff_swapped, beta_direct,
/// beta_swapped, serfling.
inline constexpr std::array<BoundMethod, 5> kBoundMethods = {
    BoundMethod::ChernoffDirect, BoundMethod::ChernoffSwapped, BoundMethod::BetaDirect,
    BoundMethod::BetaSwapped, BoundMethod::Serfling};

std::string_view method_name(BoundMethod m);
std::optional<BoundMethod> parse_method(std::string_view name);

/// Set of bound methods to evaluate. BestCanonical and Exact are labels and
/// are never inserted.
class MethodSet {
 public:
  MethodSet() = default;
  MethodSet(std::initializer_list<BoundMethod> methods) {
    for (auto m : methods) insert(m);
  }
  static MethodSet all() {
    MethodSet s;
    for (auto m : kBoundMethods) s.insert(m);
    return s;
  }
  /// Comma-separated names, or "all". Throws std::invalid_argument.
  static MethodSet parse(std::string_view list);

  void insert(BoundMethod m) {
    if (m == BoundMethod::BestCanonical || m == BoundMethod::Exact) return;
    bits_ |= 1u << static_cast<unsigned>(m);
  }
  bool contains(BoundMethod m) const { return (bits_ >> static_cast<unsigned>(m)) & 1u; }
  bool empty() const { return bits_ == 0; }
  /// Members in kBoundMethods order.
  std::vector<BoundMethod> members() const;

 private:
  unsigned bits_ = 0;
};

/// One bound evaluation on one representation of the query.
struct BoundResult {
  BoundMethod method = BoundMethod::ChernoffDirect;
  /// The representation the method's formula was applied to.
  SymmetryRep representation;
  bool applicable = false;
  /// Present iff applicable.
  std::optional<LogProb> log_value;
  std::optional<double> linear_value;
  /// The value is 0 because the threshold exceeds the support of the
  /// binomial the method uses.
  bool degenerate_support = false;
  /// For BestCanonical results, the method that achieved the minimum.
  BoundMethod source = BoundMethod::ChernoffDirect;
  /// Why the method was not applicable.
  std::string note;
};

/// The bound evaluations for one query.
struct BoundReport {
  TailQuery query;
  /// The query as evaluated: identical to `query` for Upper, reflected to
  /// Pr[X' >= n-d] with X' ~ Hypergeometric(N, N-K, n) for Lower.
  TailQuery upper_query;
  std::vector<BoundResult> results;
  std::optional<LogProb> exact;
  BoundResult best;
};

/// Exact tails are attached only when the support has at most this many terms.
inline constexpr std::int64_t kExactSupportLimit = 10'000'000;

struct ReportOptions {
  bool include_exact = true;
  std::int64_t exact_support_limit = kExactSupportLimit;
};

// The single-method entry points throw PreconditionError when
// d < floor(nK/N) + 1.

/// Direct Chernoff. Thresholds above n give 0 with degenerate_support set.
BoundResult chernoff_upper(const HypergeomParams& params, std::int64_t d);
/// Chernoff on Hypergeometric(N, n, K). Thresholds above K give 0 with
/// degenerate_support set.
BoundResult chernoff_swapped(const HypergeomParams& params, std::int64_t d);
/// I_{K/N}(d, n-d+1). Also throws PreconditionError when d > n.
BoundResult beta_upper(const HypergeomParams& params, std::int64_t d);
/// I_{n/N}(d, K-d+1). Thresholds above K give 0 with degenerate_support set.
BoundResult beta_swapped(const HypergeomParams& params, std::int64_t d);
/// Serfling's finite-population bound. Also throws PreconditionError when n = 0.
BoundResult serfling_upper(const HypergeomParams& params, std::int64_t d);

/// Evaluates `method` on the given representation without throwing;
/// precondition failures produce applicable = false with a note.
BoundResult evaluate_method(BoundMethod method, const SymmetryRep& rep);

/// Evaluates every requested method on every orbit representation of the
/// (reflected, for Lower) query and selects the minimum. Throws
/// PreconditionError below the bound regime and NoApplicableMethodError when
/// nothing applies.
BoundReport best_bound(const TailQuery& query, const MethodSet& methods,
                       const ReportOptions& options = {});

struct InversionResult {
  std::int64_t threshold;
  /// Best bound at `threshold`; zero when the threshold lies beyond the
  /// support and no method reaches epsilon there.
  LogProb bound;
  /// threshold == min(n,K)+1, where the exact tail is 0.
  bool beyond_support = false;
};

/// Smallest d in [floor(nK/N)+1, min(n,K)+1] whose best bound is at most
/// epsilon; min(n,K)+1 when no bound inside the support gets there. Throws
/// DomainError unless 0 < epsilon <= 1.
InversionResult invert_threshold(const HypergeomParams& params, double epsilon,
                                 const MethodSet& methods);

}  // namespace hgtail
