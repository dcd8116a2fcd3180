#pragma once

// Biased iterated revision: confirmation (stubbornness thresholds), framing
// (perceived subsets of observations), anchoring (revision by the most
// plausible observation-worlds, then a forced unique minimum), and a resource
// budget that halves with every executed revision.
//
// Each bias is expressed as a step function over positions of a sequence, so
// the same folds drive both the plain revise_* entry points and the learner,
// and any of them can be wrapped by with_budget.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bbr/core.hpp"
#include "bbr/random.hpp"
#include "bbr/revision.hpp"
#include "bbr/streams.hpp"

namespace bbr {

/// Per-observable revision thresholds. Unlisted observables have threshold 1.
class StubbornnessMap {
 public:
  StubbornnessMap() = default;

  explicit StubbornnessMap(std::vector<std::size_t> thresholds) : thresholds_(std::move(thresholds)) {
    for (std::size_t t : thresholds_) {
      if (t == 0) throw std::invalid_argument("stubbornness thresholds must be >= 1");
    }
  }

  static StubbornnessMap uniform(std::size_t n_observables, std::size_t value) {
    return StubbornnessMap(std::vector<std::size_t>(n_observables, value));
  }

  std::size_t threshold(ObsIndex o) const { return o < thresholds_.size() ? thresholds_[o] : 1; }
  const std::vector<std::size_t>& thresholds() const noexcept { return thresholds_; }

  friend bool operator==(const StubbornnessMap&, const StubbornnessMap&) = default;

 private:
  std::vector<std::size_t> thresholds_;
};

/// Whether the datum being read counts toward its own occurrence total.
enum class CountMode { Inclusive, Strict };

struct ResourceBudget {
  double remaining = 100.0;
  double floor = 1.0;

  bool exhausted() const noexcept { return remaining < floor; }
};

namespace bias {
struct None {};
struct Confirmation {
  StubbornnessMap stubbornness;
  CountMode mode = CountMode::Inclusive;
};
struct Framing {
  FramingMode mode = framing::Dynamic{};
};
struct Anchoring {};
}  // namespace bias

using Bias = std::variant<bias::None, bias::Confirmation, bias::Framing, bias::Anchoring>;

struct BiasedMethodSpec {
  OneStepMethod base = OneStepMethod::Cond;
  Bias bias = bias::None{};
  std::optional<ResourceBudget> budget;
};

struct StepResult {
  PlausibilitySpace state;
  bool revised = false;
};

/// Consumes the datum at a position and returns the next state.
using StepFn = std::function<StepResult(const PlausibilitySpace&, std::size_t position)>;

inline StepFn unbiased_step(OneStepMethod base, DataSequence seq) {
  return [base, seq = std::move(seq)](const PlausibilitySpace& ps, std::size_t i) {
    return StepResult{revise_once(base, ps, ps.space().observable(seq.at(i))), true};
  };
}

inline StepFn confirmation_step(OneStepMethod base, DataSequence seq, StubbornnessMap stubbornness,
                                CountMode mode) {
  return [base, seq = std::move(seq), d = std::move(stubbornness), mode](const PlausibilitySpace& ps,
                                                                         std::size_t i) {
    const ObsIndex o = seq.at(i);
    const std::size_t seen = count_occurrences(seq, mode == CountMode::Inclusive ? i + 1 : i, o);
    if (seen < d.threshold(o)) return StepResult{ps, false};
    return StepResult{revise_once(base, ps, ps.space().observable(o)), true};
  };
}

inline StepFn framing_step(OneStepMethod base, FramedSequence fseq) {
  return [base, fseq = std::move(fseq)](const PlausibilitySpace& ps, std::size_t i) {
    return StepResult{revise_once(base, ps, fseq.at(i).frame), true};
  };
}

/// Revises by the most plausible surviving worlds of each observation using
/// the upgraded operator. `rng` must outlive the returned step.
inline StepFn anchoring_step(OneStepMethod base, DataSequence seq, Rng& rng) {
  return [base, seq = std::move(seq), &rng](const PlausibilitySpace& ps, std::size_t i) {
    const Proposition anchor = min_worlds(ps.order(), ps.space().observable(seq.at(i)));
    return StepResult{revise_once_plus(base, ps, anchor, rng), true};
  };
}

/// A step that ignores data once the budget is below its floor and halves the
/// budget after every revision the inner step executes.
class BudgetedStep {
 public:
  BudgetedStep(StepFn inner, ResourceBudget budget) : inner_(std::move(inner)), budget_(budget) {
    if (!(budget_.remaining >= 0.0)) throw std::invalid_argument("budget must be non-negative");
  }

  StepResult operator()(const PlausibilitySpace& ps, std::size_t i) {
    if (budget_.exhausted()) return {ps, false};
    StepResult r = inner_(ps, i);
    if (r.revised) budget_.remaining /= 2.0;
    return r;
  }

  const ResourceBudget& budget() const noexcept { return budget_; }

 private:
  StepFn inner_;
  ResourceBudget budget_;
};

inline BudgetedStep with_budget(StepFn step, ResourceBudget budget) {
  return BudgetedStep(std::move(step), budget);
}

/// Applies `step` to positions 0..n-1 in order.
template <class Step>
PlausibilitySpace fold_steps(const PlausibilitySpace& ps, std::size_t n, Step&& step) {
  PlausibilitySpace cur = ps;
  for (std::size_t i = 0; i < n; ++i) cur = step(cur, i).state;
  return cur;
}

inline PlausibilitySpace revise_cb(OneStepMethod base, const PlausibilitySpace& ps,
                                   const DataSequence& seq, const StubbornnessMap& stubbornness,
                                   CountMode mode = CountMode::Inclusive) {
  check_sequence(ps.space(), seq);
  return fold_steps(ps, seq.size(), confirmation_step(base, seq, stubbornness, mode));
}

inline PlausibilitySpace revise_fr(OneStepMethod base, const PlausibilitySpace& ps,
                                   const FramedSequence& fseq) {
  return fold_steps(ps, fseq.size(), framing_step(base, fseq));
}

inline PlausibilitySpace revise_ab(OneStepMethod base, const PlausibilitySpace& ps,
                                   const DataSequence& seq, Rng& rng) {
  check_sequence(ps.space(), seq);
  return fold_steps(ps, seq.size(), anchoring_step(base, seq, rng));
}

}  // namespace bbr
