#pragma once

// Belief-revision-based learners and their finite-horizon verdicts.

#include <algorithm>
#include <optional>
#include <type_traits>
#include <variant>
#include <vector>

#include "bbr/bias.hpp"
#include "bbr/core.hpp"
#include "bbr/revision.hpp"
#include "bbr/streams.hpp"

namespace bbr {

struct TrajectoryStep {
  std::size_t position = 0;
  Proposition conjecture;
  bool revised = false;
  std::optional<double> budget_remaining;
};

/// The conjecture before any data (position 0) and after each datum.
struct Trajectory {
  std::vector<TrajectoryStep> steps;
  std::optional<ResourceBudget> final_budget;

  const Proposition& final_conjecture() const { return steps.back().conjecture; }
  bool budget_exhausted() const { return final_budget && final_budget->exhausted(); }
};

struct Verdict {
  bool success = false;
  std::optional<std::size_t> converge_step;
  std::size_t revisions_executed = 0;
};

/// Folds `step` over `n` positions, recording the conjecture after each.
inline Trajectory run_steps(const PlausibilitySpace& ps0, std::size_t n, StepFn step,
                            const std::optional<ResourceBudget>& budget) {
  Trajectory traj;
  traj.steps.reserve(n + 1);
  traj.steps.push_back(
      {0, min_worlds(ps0.order()), false, budget ? std::optional(budget->remaining) : std::nullopt});

  PlausibilitySpace cur = ps0;
  if (budget) {
    BudgetedStep limited = with_budget(std::move(step), *budget);
    for (std::size_t i = 0; i < n; ++i) {
      StepResult r = limited(cur, i);
      cur = std::move(r.state);
      traj.steps.push_back({i + 1, min_worlds(cur.order()), r.revised, limited.budget().remaining});
    }
    traj.final_budget = limited.budget();
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      StepResult r = step(cur, i);
      cur = std::move(r.state);
      traj.steps.push_back({i + 1, min_worlds(cur.order()), r.revised, std::nullopt});
    }
  }
  return traj;
}

/// Runs a (possibly biased, possibly budgeted) learner on `seq`. `rng` feeds
/// random framing and anchoring picks; unbiased and confirmation-biased runs
/// never touch it.
inline Trajectory run_learner(const BiasedMethodSpec& spec, const PlausibilitySpace& ps0,
                              const DataSequence& seq, Rng& rng) {
  check_sequence(ps0.space(), seq);
  StepFn step = std::visit(
      [&](const auto& b) -> StepFn {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, bias::None>) {
          return unbiased_step(spec.base, seq);
        } else if constexpr (std::is_same_v<B, bias::Confirmation>) {
          return confirmation_step(spec.base, seq, b.stubbornness, b.mode);
        } else if constexpr (std::is_same_v<B, bias::Framing>) {
          return framing_step(spec.base, frame_sequence(ps0.space(), seq, b.mode, rng));
        } else {
          return anchoring_step(spec.base, seq, rng);
        }
      },
      spec.bias);
  return run_steps(ps0, seq.size(), std::move(step), spec.budget);
}

/// Success iff the last conjecture is exactly {actual}. converge_step is the
/// first position from which every recorded conjecture is {actual}.
inline Verdict verdict(const Trajectory& traj, WorldId actual) {
  Verdict v;
  for (const auto& s : traj.steps) {
    if (s.revised) ++v.revisions_executed;
  }
  if (traj.steps.empty()) return v;

  auto is_target = [&](const TrajectoryStep& s) {
    return s.conjecture.size() == 1 && s.conjecture.contains(actual);
  };
  if (!is_target(traj.steps.back())) return v;

  v.success = true;
  std::size_t k = traj.steps.size() - 1;
  while (k > 0 && is_target(traj.steps[k - 1])) --k;
  v.converge_step = traj.steps[k].position;
  return v;
}

/// A finite space is identifiable in the limit iff no two worlds satisfy the
/// same observables. Sufficiency: with canonical_prior, conditioning on a
/// sound and complete sequence for s leaves exactly the worlds whose
/// signatures contain sig(s), all of which rank after s. Necessity: worlds with
/// equal signatures receive identical data.
inline bool is_identifiable(const EpistemicSpace& space) {
  std::vector<std::vector<ObsIndex>> sigs;
  sigs.reserve(space.n_states());
  for (WorldId w = 0; w < space.n_states(); ++w) sigs.push_back(signature(space, w));
  std::sort(sigs.begin(), sigs.end());
  return std::adjacent_find(sigs.begin(), sigs.end()) == sigs.end();
}

/// A strict linear prior in which every world precedes the worlds whose
/// signatures strictly contain its own; otherwise worlds go by index.
inline PlausibilityOrder canonical_prior(const EpistemicSpace& space) {
  const std::size_t n = space.n_states();
  std::vector<std::vector<ObsIndex>> sigs;
  sigs.reserve(n);
  for (WorldId w = 0; w < n; ++w) sigs.push_back(signature(space, w));

  auto strictly_below = [&](WorldId u, WorldId v) {  // sig(u) strictly inside sig(v)
    return sigs[u].size() < sigs[v].size() &&
           std::includes(sigs[v].begin(), sigs[v].end(), sigs[u].begin(), sigs[u].end());
  };

  std::vector<PlausibilityOrder::Rank> ranks(n, PlausibilityOrder::kAbsent);
  std::vector<bool> placed(n, false);
  for (PlausibilityOrder::Rank next = 0; next < n; ++next) {
    for (WorldId v = 0; v < n; ++v) {
      if (placed[v]) continue;
      bool ready = true;
      for (WorldId u = 0; u < n && ready; ++u) {
        if (!placed[u] && u != v && strictly_below(u, v)) ready = false;
      }
      if (ready) {
        ranks[v] = next;
        placed[v] = true;
        break;
      }
    }
  }
  return PlausibilityOrder(std::move(ranks));
}

}  // namespace bbr
