#pragma once

// Finite data sequences: soundness/completeness, generation, framing.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "bbr/core.hpp"
#include "bbr/random.hpp"

namespace bbr {

/// A finite sequence of observable indices. Empty is the empty sequence.
using DataSequence = std::vector<ObsIndex>;

/// One perceived datum: the observable that was actually shown and the
/// proposition the agent took it to be (always a subset of the observable).
struct FramedItem {
  ObsIndex origin;
  Proposition frame;

  friend bool operator==(const FramedItem&, const FramedItem&) = default;
};

using FramedSequence = std::vector<FramedItem>;

namespace framing {
struct Identity {};
/// One random frame per distinct observable, reused at every occurrence.
struct Static {};
/// A fresh random frame per position.
struct Dynamic {};
/// Dynamic on the first `prefix` positions, identity afterwards.
struct Fair {
  std::size_t prefix = 0;
};
}  // namespace framing

using FramingMode = std::variant<framing::Identity, framing::Static, framing::Dynamic, framing::Fair>;

inline void check_sequence(const EpistemicSpace& space, const DataSequence& seq) {
  for (ObsIndex o : seq) {
    if (o >= space.n_observables()) {
      throw std::out_of_range("observable index " + std::to_string(o) + " out of range (" +
                              std::to_string(space.n_observables()) + " observables)");
    }
  }
}

inline bool is_sound(const EpistemicSpace& space, const DataSequence& seq, WorldId s) {
  return std::all_of(seq.begin(), seq.end(),
                     [&](ObsIndex o) { return space.observable(o).contains(s); });
}

inline bool is_complete(const EpistemicSpace& space, const DataSequence& seq, WorldId s) {
  std::vector<bool> seen(space.n_observables(), false);
  for (ObsIndex o : seq) seen.at(o) = true;
  for (ObsIndex o : signature(space, s)) {
    if (!seen[o]) return false;
  }
  return true;
}

/// Number of positions before `upto` holding `o`.
inline std::size_t count_occurrences(const DataSequence& seq, std::size_t upto, ObsIndex o) {
  if (upto > seq.size()) throw std::out_of_range("count_occurrences: upto exceeds length");
  return static_cast<std::size_t>(
      std::count(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(upto), o));
}

namespace detail {
inline std::vector<ObsIndex> nonempty_signature(const EpistemicSpace& space, WorldId s) {
  auto sig = signature(space, s);
  if (sig.empty()) {
    throw std::invalid_argument("world " + std::to_string(s) +
                                " satisfies no observable; no sound and complete sequence exists");
  }
  return sig;
}

inline Proposition random_subset(const Proposition& of, Rng& rng) {
  // Uniform over all 2^|of| subsets, the empty set included.
  std::uint64_t m = 0;
  for (WorldId w : of.members()) {
    if (rng() >> 63) m |= std::uint64_t{1} << w;
  }
  return {of.width(), m};
}
}  // namespace detail

/// A shuffled sequence of length |observables| + extra that is sound and
/// complete for `s`: each signature index once, filler drawn uniformly from the
/// signature.
inline DataSequence generate_sound_complete(const EpistemicSpace& space, WorldId s,
                                            std::size_t extra, Rng& rng) {
  const auto sig = detail::nonempty_signature(space, s);
  const std::size_t length = space.n_observables() + extra;
  DataSequence seq(sig.begin(), sig.end());
  while (seq.size() < length) {
    seq.push_back(sig[uniform_below(rng, sig.size())]);
  }
  shuffle(std::span<ObsIndex>(seq), rng);
  return seq;
}

/// Finite stand-in for a fat stream: every signature index exactly
/// `min_repeats` times, shuffled.
inline DataSequence generate_fat(const EpistemicSpace& space, WorldId s, std::size_t min_repeats,
                                 Rng& rng) {
  if (min_repeats == 0) throw std::invalid_argument("generate_fat: min_repeats must be >= 1");
  const auto sig = detail::nonempty_signature(space, s);
  DataSequence seq;
  seq.reserve(sig.size() * min_repeats);
  for (std::size_t r = 0; r < min_repeats; ++r) seq.insert(seq.end(), sig.begin(), sig.end());
  shuffle(std::span<ObsIndex>(seq), rng);
  return seq;
}

/// Pairs every datum with a perceived proposition. Random frames are uniform
/// subsets of the shown observable and may be empty.
inline FramedSequence frame_sequence(const EpistemicSpace& space, const DataSequence& seq,
                                     const FramingMode& mode, Rng& rng) {
  check_sequence(space, seq);
  FramedSequence out;
  out.reserve(seq.size());
  std::map<ObsIndex, Proposition> static_frames;

  for (std::size_t i = 0; i < seq.size(); ++i) {
    const ObsIndex o = seq[i];
    const Proposition& ext = space.observable(o);
    Proposition frame = std::visit(
        [&](const auto& m) -> Proposition {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, framing::Identity>) {
            return ext;
          } else if constexpr (std::is_same_v<M, framing::Static>) {
            auto it = static_frames.find(o);
            if (it == static_frames.end()) {
              it = static_frames.emplace(o, detail::random_subset(ext, rng)).first;
            }
            return it->second;
          } else if constexpr (std::is_same_v<M, framing::Dynamic>) {
            return detail::random_subset(ext, rng);
          } else {
            return i < m.prefix ? detail::random_subset(ext, rng) : ext;
          }
        },
        mode);
    out.push_back({o, frame});
  }
  return out;
}

}  // namespace bbr
