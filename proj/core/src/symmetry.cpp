#include "hgtail/symmetry.hpp"

#include <algorithm>

#include "hgtail/errors.hpp"

namespace hgtail {
namespace {

void require_upper(const TailQuery& query) {
  if (query.direction != TailDirection::Upper) {
    throw PreconditionError("symmetry representations are defined for upper-tail queries");
  }
}

}  // namespace

std::string_view transform_name(Transform t) {
  switch (t) {
    case Transform::Identity: return "identity";
    case Transform::Swap: return "swap";
    case Transform::ComplementA: return "complement_a";
    case Transform::ComplementB: return "complement_b";
  }
  return "unknown";
}

std::string SymmetryRep::chain_string() const {
  if (transform_chain.empty()) return "identity";
  std::string out;
  for (std::size_t i = 0; i < transform_chain.size(); ++i) {
    if (i) out += '+';
    out += transform_name(transform_chain[i]);
  }
  return out;
}

SymmetryRep apply_transform(const SymmetryRep& rep, Transform t) {
  const auto N = rep.params.population();
  const auto K = rep.params.successes();
  const auto n = rep.params.draws();
  const auto d = rep.threshold;
  std::vector<Transform> chain = rep.transform_chain;
  chain.push_back(t);
  switch (t) {
    case Transform::Identity:
      return {rep.params, d, std::move(chain)};
    case Transform::Swap:
      return {HypergeomParams(N, n, K), d, std::move(chain)};
    case Transform::ComplementA:
      return {HypergeomParams(N, N - K, N - n), N - n - K + d, std::move(chain)};
    case Transform::ComplementB:
      return {HypergeomParams(N, N - n, N - K), N - n - K + d, std::move(chain)};
  }
  return rep;
}

SymmetryRep replay_chain(const TailQuery& original, const std::vector<Transform>& chain) {
  SymmetryRep rep{original.params, original.threshold, {}};
  for (Transform t : chain) rep = apply_transform(rep, t);
  return rep;
}

SymmetryRep identity_rep(const TailQuery& query) {
  return {query.params, query.threshold, {Transform::Identity}};
}

SymmetryRep swap_rep(const TailQuery& query) {
  require_upper(query);
  return replay_chain(query, {Transform::Swap});
}

SymmetryRep complement_rep(const TailQuery& query) {
  require_upper(query);
  return replay_chain(query, {Transform::ComplementA});
}

std::vector<SymmetryRep> representation_orbit(const TailQuery& query) {
  require_upper(query);
  std::vector<SymmetryRep> orbit;
  for (Transform t : {Transform::Identity, Transform::Swap, Transform::ComplementA,
                      Transform::ComplementB}) {
    SymmetryRep rep = replay_chain(query, {t});
    const bool seen = std::any_of(orbit.begin(), orbit.end(), [&](const SymmetryRep& r) {
      return r.params == rep.params && r.threshold == rep.threshold;
    });
    if (!seen) orbit.push_back(std::move(rep));
  }
  return orbit;
}

}  // namespace hgtail
