#pragma once

// Shared test spaces and brute-force relational oracles.

#include <cstdint>
#include <memory>
#include <vector>

#include "bbr/core.hpp"
#include "bbr/random.hpp"

namespace fx {

using bbr::EpistemicSpace;
using bbr::PlausibilityOrder;
using bbr::PlausibilitySpace;
using bbr::Proposition;
using Rank = PlausibilityOrder::Rank;
constexpr Rank kAbsent = PlausibilityOrder::kAbsent;

// Worlds of both four-world examples.
constexpr bbr::WorldId W = 0, T = 1, S = 2, R = 3;

// Four worlds, four observables whose signatures are pairwise incomparable:
// p = {w,t}, p̄ = {s,r}, q = {w,s}, q̄ = {t,r}.
namespace cb {
constexpr bbr::ObsIndex P = 0, PBAR = 1, Q = 2, QBAR = 3;
inline std::shared_ptr<const EpistemicSpace> space() {
  return std::make_shared<const EpistemicSpace>(
      4, std::vector<Proposition>{Proposition(4, {W, T}), Proposition(4, {S, R}), Proposition(4, {W, S}),
                                  Proposition(4, {T, R})});
}
}  // namespace cb

// Four worlds with p = {w}, q = {r,t,w}, p̄ = {r,s,t}, q̄ = {s}, order
// w < t ~ s < r and actual world s.
namespace ab {
constexpr bbr::ObsIndex P = 0, Q = 1, PBAR = 2, QBAR = 3;
inline std::shared_ptr<const EpistemicSpace> space() {
  return std::make_shared<const EpistemicSpace>(
      4, std::vector<Proposition>{Proposition(4, {W}), Proposition(4, {R, T, W}), Proposition(4, {R, S, T}),
                                  Proposition(4, {S})});
}
inline PlausibilityOrder order() { return PlausibilityOrder({0, 1, 1, 2}); }
}  // namespace ab

/// Random order over n worlds; each world absent with probability `absent`/8.
inline PlausibilityOrder random_order(bbr::Rng& rng, std::size_t n, unsigned absent = 1) {
  std::vector<Rank> r(n);
  for (auto& x : r) {
    x = bbr::uniform_below(rng, 8) < absent ? kAbsent : static_cast<Rank>(bbr::uniform_below(rng, n));
  }
  return bbr::normalize_ranks(PlausibilityOrder(std::move(r)));
}

inline Proposition random_prop(bbr::Rng& rng, std::size_t n) {
  return {n, bbr::uniform_below(rng, std::uint64_t{1} << n)};
}

/// Random space with distinct non-empty observables (not necessarily covering).
inline std::shared_ptr<const EpistemicSpace> random_space(bbr::Rng& rng, std::size_t n, std::size_t k) {
  std::vector<Proposition> obs;
  while (obs.size() < k) {
    Proposition p(n, bbr::uniform_below(rng, (std::uint64_t{1} << n) - 1) + 1);
    bool dup = false;
    for (const auto& o : obs) dup = dup || o == p;
    if (!dup) obs.push_back(p);
  }
  return std::make_shared<const EpistemicSpace>(n, std::move(obs));
}

// --- Relational oracles -----------------------------------------------------
// A preorder is a boolean matrix le[u][v] over domain members.

using Relation = std::vector<std::vector<bool>>;

inline Relation relation_of(const PlausibilityOrder& o) {
  const std::size_t n = o.n_worlds();
  Relation le(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      le[u][v] = o.in_domain(u) && o.in_domain(v) && o.rank(u) <= o.rank(v);
  return le;
}

inline Relation cond_relation(const PlausibilityOrder& o, const Proposition& p) {
  Relation le = relation_of(o);
  for (std::size_t u = 0; u < le.size(); ++u)
    for (std::size_t v = 0; v < le.size(); ++v)
      le[u][v] = le[u][v] && p.contains(u) && p.contains(v);
  return le;
}

// u <= v iff (u in p and v not in p) or (same side and u <= v before).
inline Relation lex_relation(const PlausibilityOrder& o, const Proposition& p) {
  const Relation old = relation_of(o);
  Relation le = old;
  for (std::size_t u = 0; u < le.size(); ++u)
    for (std::size_t v = 0; v < le.size(); ++v) {
      if (!o.in_domain(u) || !o.in_domain(v)) continue;
      const bool pu = p.contains(u), pv = p.contains(v);
      le[u][v] = (pu && !pv) || (pu == pv && old[u][v]);
    }
  return le;
}

// M = best p-worlds; u <= v iff u in M, or neither in M and u <= v before.
inline Relation mini_relation(const PlausibilityOrder& o, const Proposition& p) {
  const Relation old = relation_of(o);
  std::vector<bool> best(o.n_worlds(), false);
  for (std::size_t u = 0; u < o.n_worlds(); ++u) {
    if (!o.in_domain(u) || !p.contains(u)) continue;
    bool minimal = true;
    for (std::size_t v = 0; v < o.n_worlds(); ++v)
      if (o.in_domain(v) && p.contains(v) && !old[u][v]) minimal = false;
    best[u] = minimal;
  }
  Relation le = old;
  for (std::size_t u = 0; u < le.size(); ++u)
    for (std::size_t v = 0; v < le.size(); ++v) {
      if (!o.in_domain(u) || !o.in_domain(v)) continue;
      le[u][v] = best[u] || (!best[v] && old[u][v]);
    }
  return le;
}

}  // namespace fx
