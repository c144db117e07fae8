#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hgtail/hypergeom.hpp"

namespace hgtail {

/// Relabelings of Hypergeometric(N, K, n) that preserve the upper tail.
///   Swap:        (N, K, n, d) -> (N, n, K, d)
///   ComplementA: (N, K, n, d) -> (N, N-K, N-n, N-n-K+d)
///   ComplementB: (N, K, n, d) -> (N, N-n, N-K, N-n-K+d)
/// Together with Identity these form a Klein four-group.
enum class Transform { Identity, Swap, ComplementA, ComplementB };

std::string_view transform_name(Transform t);

/// An upper-tail query re-expressed through a chain of transforms applied to
/// an original query, left to right.
struct SymmetryRep {
  HypergeomParams params;
  std::int64_t threshold;
  std::vector<Transform> transform_chain;

  /// Chain rendered as e.g. "swap" or "complement_a"; "identity" when empty.
  std::string chain_string() const;

  friend bool operator==(const SymmetryRep&, const SymmetryRep&) = default;
};

/// Applies one transform to (params, threshold).
SymmetryRep apply_transform(const SymmetryRep& rep, Transform t);

/// Replays rep.transform_chain on the original query.
SymmetryRep replay_chain(const TailQuery& original, const std::vector<Transform>& chain);

SymmetryRep identity_rep(const TailQuery& query);

/// (N, n, K) with the same threshold. Requires an Upper query.
SymmetryRep swap_rep(const TailQuery& query);

/// (N, N-K, N-n) with threshold N-n-K+d. Requires an Upper query.
SymmetryRep complement_rep(const TailQuery& query);

/// Distinct representations among {identity, swap, complement,
/// complement-of-swap}, in that order. Size is 1, 2 or 4.
std::vector<SymmetryRep> representation_orbit(const TailQuery& query);

}  // namespace hgtail
