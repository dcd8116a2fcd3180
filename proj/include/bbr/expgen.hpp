#pragma once

// Seeded generation of random trial inputs: space, prior, actual world, a
// sound and complete data sequence and stubbornness values.
//
// Every trial is a pure function of (config, trial index). The trial seed is
// mixed from the master seed and the index, and each consumer of randomness
// (generation, stubbornness, framing, anchoring) draws from its own stream
// derived from the trial seed. Methods run on the same trial therefore see the
// same inputs, and trials can be generated in any order or in parallel.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "bbr/bias.hpp"
#include "bbr/core.hpp"
#include "bbr/random.hpp"
#include "bbr/streams.hpp"

namespace bbr {

struct Range {
  std::size_t lo = 0;
  std::size_t hi = 0;

  friend bool operator==(const Range&, const Range&) = default;
};

struct GenConfig {
  std::size_t n_states = 5;
  std::size_t n_observables = 12;
  Range extra_len{2, 4};
  Range stubbornness_range{1, 5};
  std::size_t trials = 200;
  std::uint64_t master_seed = 0;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SeedStream : std::uint64_t { Stubbornness = 1, Framing = 2, Anchoring = 3 };

inline std::uint64_t stream_seed(std::uint64_t trial_seed, SeedStream s) {
  return mix_seed(trial_seed, static_cast<std::uint64_t>(s));
}

inline void validate(const GenConfig& cfg) {
  if (cfg.n_states == 0 || cfg.n_states > kMaxWorlds) {
    throw std::invalid_argument("n_states must be in [1, " + std::to_string(kMaxWorlds) + "]");
  }
  if (cfg.n_observables == 0) throw std::invalid_argument("n_observables must be >= 1");
  if (cfg.extra_len.lo > cfg.extra_len.hi) throw std::invalid_argument("extra_len range is empty");
  if (cfg.stubbornness_range.lo > cfg.stubbornness_range.hi || cfg.stubbornness_range.lo == 0) {
    throw std::invalid_argument("stubbornness range must be non-empty and start at >= 1");
  }
}

inline constexpr int kSpaceRetries = 1000;

/// n_observables distinct, uniformly drawn non-empty propositions that
/// together cover every world.
inline EpistemicSpace random_space(const GenConfig& cfg, Rng& rng) {
  const std::size_t n = cfg.n_states;
  if (n < 64 && cfg.n_observables > (std::uint64_t{1} << n) - 1) {
    throw GenerationError("cannot draw " + std::to_string(cfg.n_observables) +
                          " distinct non-empty propositions over " + std::to_string(n) + " worlds");
  }
  const std::uint64_t full = Proposition::full_mask(n);

  for (int attempt = 0; attempt < kSpaceRetries; ++attempt) {
    std::vector<Proposition> obs;
    obs.reserve(cfg.n_observables);
    std::uint64_t covered = 0;
    while (obs.size() < cfg.n_observables) {
      const std::uint64_t m = n < 64 ? uniform_below(rng, full) + 1 : rng();
      if (m == 0) continue;
      Proposition p(n, m);
      if (std::find(obs.begin(), obs.end(), p) != obs.end()) continue;
      obs.push_back(p);
      covered |= m;
    }
    if (covered == full) return EpistemicSpace(n, std::move(obs));
  }
  throw GenerationError("no space covering all " + std::to_string(n) + " worlds with " +
                        std::to_string(cfg.n_observables) + " observables after " +
                        std::to_string(kSpaceRetries) + " attempts");
}

/// Independent uniform ranks in [0, n_states), normalized; ties are likely.
inline PlausibilityOrder random_prior(const EpistemicSpace& space, Rng& rng) {
  std::vector<PlausibilityOrder::Rank> ranks(space.n_states());
  for (auto& r : ranks) r = static_cast<PlausibilityOrder::Rank>(uniform_below(rng, space.n_states()));
  return normalize_ranks(PlausibilityOrder(std::move(ranks)));
}

inline StubbornnessMap random_stubbornness(std::size_t n_observables, Range range, Rng& rng) {
  std::vector<std::size_t> t(n_observables);
  for (auto& v : t) v = static_cast<std::size_t>(uniform_between(rng, range.lo, range.hi));
  return StubbornnessMap(std::move(t));
}

struct TrialInputs {
  std::shared_ptr<const EpistemicSpace> space;
  PlausibilityOrder prior;
  WorldId actual = 0;
  DataSequence seq;
  StubbornnessMap stubbornness;
  std::uint64_t trial_seed = 0;

  PlausibilitySpace initial() const { return {space, prior}; }
};

/// Stubbornness values of a trial for a given range, drawn from the trial's
/// dedicated stream so that equal ranges yield equal values across methods.
inline StubbornnessMap trial_stubbornness(std::uint64_t trial_seed, std::size_t n_observables,
                                          Range range) {
  Rng rng(stream_seed(trial_seed, SeedStream::Stubbornness));
  return random_stubbornness(n_observables, range, rng);
}

inline TrialInputs make_trial(const GenConfig& cfg, std::uint64_t trial_index) {
  validate(cfg);
  TrialInputs t;
  t.trial_seed = mix_seed(cfg.master_seed, trial_index);
  Rng rng(t.trial_seed);

  t.space = std::make_shared<const EpistemicSpace>(random_space(cfg, rng));
  // Coverage guarantees every world has a non-empty signature.
  t.actual = static_cast<WorldId>(uniform_below(rng, cfg.n_states));
  const auto extra = static_cast<std::size_t>(uniform_between(rng, cfg.extra_len.lo, cfg.extra_len.hi));
  t.seq = generate_sound_complete(*t.space, t.actual, extra, rng);
  t.prior = random_prior(*t.space, rng);
  t.stubbornness = trial_stubbornness(t.trial_seed, cfg.n_observables, cfg.stubbornness_range);
  return t;
}

}  // namespace bbr
