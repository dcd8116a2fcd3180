#pragma once

// One-step revision operators (conditioning, lexicographic, minimal), their
// upgraded variants used by anchoring, and iterated application.

#include <stdexcept>
#include <string_view>
#include <vector>

#include "bbr/core.hpp"
#include "bbr/random.hpp"
#include "bbr/streams.hpp"

namespace bbr {

enum class OneStepMethod { Cond, Lex, Mini };

inline std::string_view to_string(OneStepMethod m) {
  switch (m) {
    case OneStepMethod::Cond: return "cond";
    case OneStepMethod::Lex: return "lex";
    case OneStepMethod::Mini: return "mini";
  }
  return "?";
}

namespace detail {
using Rank = PlausibilityOrder::Rank;
inline constexpr Rank kAbsent = PlausibilityOrder::kAbsent;

// Shifts every domain world outside `keep` down by `offset` ranks.
inline PlausibilityOrder demote_outside(const PlausibilityOrder& order, const Proposition& keep,
                                        Rank offset) {
  std::vector<Rank> out(order.ranks());
  for (std::size_t w = 0; w < out.size(); ++w) {
    if (out[w] != kAbsent && !keep.contains(w)) out[w] += offset;
  }
  return normalize_ranks(PlausibilityOrder(std::move(out)));
}

inline Rank max_rank(const PlausibilityOrder& order) {
  Rank m = 0;
  for (Rank r : order.ranks()) {
    if (r != kAbsent && r > m) m = r;
  }
  return m;
}

inline WorldId pick_uniform(const Proposition& worlds, Rng& rng) {
  const auto members = worlds.members();
  return members[uniform_below(rng, members.size())];
}
}  // namespace detail

// Order-level operators. The PlausibilitySpace overloads below are what
// callers normally use.

inline PlausibilityOrder cond_order(const PlausibilityOrder& order, const Proposition& p) {
  std::vector<detail::Rank> out(order.ranks());
  for (std::size_t w = 0; w < out.size(); ++w) {
    if (!p.contains(w)) out[w] = detail::kAbsent;
  }
  return normalize_ranks(PlausibilityOrder(std::move(out)));
}

/// p-worlds as a block above the rest, each block keeping its internal order.
inline PlausibilityOrder lex_order(const PlausibilityOrder& order, const Proposition& p) {
  return detail::demote_outside(order, p, detail::max_rank(order) + 1);
}

/// Conservative revision: only min(p) moves, to the top; everything else keeps
/// its relative order. A no-op when the domain misses p.
inline PlausibilityOrder mini_order(const PlausibilityOrder& order, const Proposition& p) {
  const Proposition best = min_worlds(order, p);
  if (best.empty()) return order;
  std::vector<detail::Rank> out(order.ranks());
  for (std::size_t w = 0; w < out.size(); ++w) {
    if (out[w] == detail::kAbsent) continue;
    out[w] = best.contains(w) ? 0 : out[w] + 1;
  }
  return normalize_ranks(PlausibilityOrder(std::move(out)));
}

inline PlausibilitySpace cond1(const PlausibilitySpace& ps, const Proposition& p) {
  return ps.with_order(cond_order(ps.order(), p));
}

inline PlausibilitySpace lex1(const PlausibilitySpace& ps, const Proposition& p) {
  return ps.with_order(lex_order(ps.order(), p));
}

inline PlausibilitySpace mini1(const PlausibilitySpace& ps, const Proposition& p) {
  return ps.with_order(mini_order(ps.order(), p));
}

/// Conditioning that collapses onto a single random minimal world whenever the
/// result has several.
inline PlausibilitySpace cond1_plus(const PlausibilitySpace& ps, const Proposition& p, Rng& rng) {
  PlausibilitySpace next = cond1(ps, p);
  const Proposition best = min_worlds(next.order());
  if (best.size() <= 1) return next;
  const WorldId x = detail::pick_uniform(best, rng);
  std::vector<detail::Rank> ranks(next.order().n_worlds(), detail::kAbsent);
  ranks[x] = 0;
  return next.with_order(PlausibilityOrder(std::move(ranks)));
}

namespace detail {
inline PlausibilitySpace upgrade_if_tied(PlausibilitySpace next, Rng& rng) {
  const Proposition best = min_worlds(next.order());
  if (best.size() <= 1) return next;
  return next.with_order(upgrade(next.order(), pick_uniform(best, rng)));
}
}  // namespace detail

inline PlausibilitySpace lex1_plus(const PlausibilitySpace& ps, const Proposition& p, Rng& rng) {
  return detail::upgrade_if_tied(lex1(ps, p), rng);
}

inline PlausibilitySpace mini1_plus(const PlausibilitySpace& ps, const Proposition& p, Rng& rng) {
  return detail::upgrade_if_tied(mini1(ps, p), rng);
}

inline PlausibilitySpace revise_once(OneStepMethod m, const PlausibilitySpace& ps,
                                     const Proposition& p) {
  switch (m) {
    case OneStepMethod::Cond: return cond1(ps, p);
    case OneStepMethod::Lex: return lex1(ps, p);
    case OneStepMethod::Mini: return mini1(ps, p);
  }
  throw std::logic_error("unknown revision method");
}

inline PlausibilitySpace revise_once_plus(OneStepMethod m, const PlausibilitySpace& ps,
                                          const Proposition& p, Rng& rng) {
  switch (m) {
    case OneStepMethod::Cond: return cond1_plus(ps, p, rng);
    case OneStepMethod::Lex: return lex1_plus(ps, p, rng);
    case OneStepMethod::Mini: return mini1_plus(ps, p, rng);
  }
  throw std::logic_error("unknown revision method");
}

/// Left fold of the one-step operator over the observables in `seq`.
inline PlausibilitySpace iterate(OneStepMethod m, const PlausibilitySpace& ps,
                                 const DataSequence& seq) {
  check_sequence(ps.space(), seq);
  PlausibilitySpace cur = ps;
  for (ObsIndex o : seq) cur = revise_once(m, cur, ps.space().observable(o));
  return cur;
}

}  // namespace bbr
