#pragma once

// Finite epistemic spaces, propositions as bitsets, plausibility orders as
// rank functions, and belief.

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bbr {

using WorldId = std::size_t;
using ObsIndex = std::size_t;

inline constexpr std::size_t kMaxWorlds = 64;

/// A set of worlds of a space with `width` worlds, stored as a 64-bit mask.
class Proposition {
 public:
  Proposition() = default;

  Proposition(std::size_t width, std::uint64_t mask) : width_(width), mask_(mask) {
    if (width > kMaxWorlds) {
      throw std::invalid_argument("proposition width " + std::to_string(width) +
                                  " exceeds " + std::to_string(kMaxWorlds));
    }
    if ((mask_ & ~full_mask(width)) != 0) {
      throw std::invalid_argument("proposition has members outside its width");
    }
  }

  Proposition(std::size_t width, std::initializer_list<WorldId> members)
      : Proposition(width, std::vector<WorldId>(members)) {}

  Proposition(std::size_t width, const std::vector<WorldId>& members) : Proposition(width, 0) {
    for (WorldId w : members) {
      if (w >= width) {
        throw std::invalid_argument("world " + std::to_string(w) + " out of range for width " +
                                    std::to_string(width));
      }
      mask_ |= bit(w);
    }
  }

  static Proposition none(std::size_t width) { return {width, std::uint64_t{0}}; }
  static Proposition all(std::size_t width) { return {width, full_mask(width)}; }

  std::size_t width() const noexcept { return width_; }
  std::uint64_t mask() const noexcept { return mask_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }
  bool empty() const noexcept { return mask_ == 0; }
  bool contains(WorldId w) const noexcept { return w < width_ && (mask_ & bit(w)) != 0; }
  bool subset_of(const Proposition& o) const noexcept { return (mask_ & ~o.mask_) == 0; }

  std::vector<WorldId> members() const {
    std::vector<WorldId> out;
    out.reserve(size());
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) {
      out.push_back(static_cast<WorldId>(std::countr_zero(m)));
    }
    return out;
  }

  Proposition complement() const noexcept { return {width_, ~mask_ & full_mask(width_), Unchecked{}}; }

  friend Proposition operator&(const Proposition& a, const Proposition& b) noexcept {
    assert(a.width_ == b.width_);
    return {a.width_, a.mask_ & b.mask_, Unchecked{}};
  }
  friend Proposition operator|(const Proposition& a, const Proposition& b) noexcept {
    assert(a.width_ == b.width_);
    return {a.width_, a.mask_ | b.mask_, Unchecked{}};
  }
  friend bool operator==(const Proposition&, const Proposition&) = default;

  static constexpr std::uint64_t full_mask(std::size_t width) noexcept {
    return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  }

 private:
  struct Unchecked {};
  Proposition(std::size_t width, std::uint64_t mask, Unchecked) noexcept : width_(width), mask_(mask) {}
  static constexpr std::uint64_t bit(WorldId w) noexcept { return std::uint64_t{1} << w; }

  std::size_t width_ = 0;
  std::uint64_t mask_ = 0;
};

/// The pair (worlds, observables). Observables are non-empty and pairwise
/// distinct; the constructor rejects anything else.
class EpistemicSpace {
 public:
  EpistemicSpace(std::size_t n_states, std::vector<Proposition> observables)
      : n_states_(n_states), observables_(std::move(observables)) {
    if (n_states_ == 0 || n_states_ > kMaxWorlds) {
      throw std::invalid_argument("n_states must be in [1, " + std::to_string(kMaxWorlds) + "]");
    }
    for (std::size_t i = 0; i < observables_.size(); ++i) {
      const auto& o = observables_[i];
      if (o.width() != n_states_) {
        throw std::invalid_argument("observable " + std::to_string(i) + " has width " +
                                    std::to_string(o.width()) + ", expected " +
                                    std::to_string(n_states_));
      }
      if (o.empty()) {
        throw std::invalid_argument("observable " + std::to_string(i) + " is empty");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (observables_[j] == o) {
          throw std::invalid_argument("observables " + std::to_string(j) + " and " +
                                      std::to_string(i) + " have the same extension");
        }
      }
    }
  }

  std::size_t n_states() const noexcept { return n_states_; }
  std::size_t n_observables() const noexcept { return observables_.size(); }
  const std::vector<Proposition>& observables() const noexcept { return observables_; }
  const Proposition& observable(ObsIndex i) const { return observables_.at(i); }
  Proposition worlds() const { return Proposition::all(n_states_); }

  friend bool operator==(const EpistemicSpace&, const EpistemicSpace&) = default;

 private:
  std::size_t n_states_;
  std::vector<Proposition> observables_;
};

/// Indices of the observables true at `s`, ascending.
inline std::vector<ObsIndex> signature(const EpistemicSpace& space, WorldId s) {
  if (s >= space.n_states()) {
    throw std::out_of_range("world " + std::to_string(s) + " out of range");
  }
  std::vector<ObsIndex> sig;
  for (ObsIndex i = 0; i < space.n_observables(); ++i) {
    if (space.observable(i).contains(s)) sig.push_back(i);
  }
  return sig;
}

/// A total preorder over a subset (the domain) of a space's worlds, given as a
/// rank per world. Lower rank is more plausible. Worlds outside the domain hold
/// kAbsent. Every operation in this library returns normalized orders (ranks
/// contiguous from 0), so two normalized orders encode the same preorder iff
/// they compare equal.
class PlausibilityOrder {
 public:
  using Rank = std::uint32_t;
  static constexpr Rank kAbsent = std::numeric_limits<Rank>::max();

  PlausibilityOrder() = default;

  explicit PlausibilityOrder(std::vector<Rank> ranks) : ranks_(std::move(ranks)) {
    if (ranks_.size() > kMaxWorlds) {
      throw std::invalid_argument("plausibility order over more than " +
                                  std::to_string(kMaxWorlds) + " worlds");
    }
  }

  /// All `n` worlds equiplausible.
  static PlausibilityOrder flat(std::size_t n) { return PlausibilityOrder(std::vector<Rank>(n, 0)); }

  std::size_t n_worlds() const noexcept { return ranks_.size(); }
  const std::vector<Rank>& ranks() const noexcept { return ranks_; }
  bool in_domain(WorldId w) const noexcept { return w < ranks_.size() && ranks_[w] != kAbsent; }
  Rank rank(WorldId w) const { return ranks_.at(w); }

  Proposition domain() const {
    std::uint64_t m = 0;
    for (std::size_t w = 0; w < ranks_.size(); ++w) {
      if (ranks_[w] != kAbsent) m |= std::uint64_t{1} << w;
    }
    return {ranks_.size(), m};
  }

  bool domain_empty() const noexcept {
    return std::all_of(ranks_.begin(), ranks_.end(), [](Rank r) { return r == kAbsent; });
  }

  /// True iff the attained ranks are exactly {0, ..., max}.
  bool is_normalized() const {
    std::vector<bool> seen(ranks_.size(), false);
    std::size_t distinct = 0;
    for (Rank r : ranks_) {
      if (r == kAbsent) continue;
      if (r >= ranks_.size()) return false;
      if (!seen[r]) {
        seen[r] = true;
        ++distinct;
      }
    }
    for (std::size_t i = 0; i < distinct; ++i) {
      if (!seen[i]) return false;
    }
    return true;
  }

  friend bool operator==(const PlausibilityOrder&, const PlausibilityOrder&) = default;

 private:
  std::vector<Rank> ranks_;
};

/// An epistemic space together with a plausibility order over (part of) it.
/// The space is shared and immutable; copying a PlausibilitySpace copies only
/// the order.
class PlausibilitySpace {
 public:
  PlausibilitySpace(std::shared_ptr<const EpistemicSpace> space, PlausibilityOrder order)
      : space_(std::move(space)), order_(std::move(order)) {
    if (!space_) throw std::invalid_argument("null epistemic space");
    if (order_.n_worlds() != space_->n_states()) {
      throw std::invalid_argument("order covers " + std::to_string(order_.n_worlds()) +
                                  " worlds, space has " + std::to_string(space_->n_states()));
    }
  }

  PlausibilitySpace(EpistemicSpace space, PlausibilityOrder order)
      : PlausibilitySpace(std::make_shared<const EpistemicSpace>(std::move(space)), std::move(order)) {}

  const EpistemicSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const EpistemicSpace>& shared_space() const noexcept { return space_; }
  const PlausibilityOrder& order() const noexcept { return order_; }

  PlausibilitySpace with_order(PlausibilityOrder order) const { return {space_, std::move(order)}; }

  friend bool operator==(const PlausibilitySpace& a, const PlausibilitySpace& b) {
    return (a.space_ == b.space_ || *a.space_ == *b.space_) && a.order_ == b.order_;
  }

 private:
  std::shared_ptr<const EpistemicSpace> space_;
  PlausibilityOrder order_;
};

/// The most plausible domain worlds inside `restrict`; empty when the domain
/// misses `restrict` entirely.
inline Proposition min_worlds(const PlausibilityOrder& order, const Proposition& restrict) {
  using Rank = PlausibilityOrder::Rank;
  const auto& ranks = order.ranks();
  Rank best = PlausibilityOrder::kAbsent;
  std::uint64_t m = 0;
  for (std::size_t w = 0; w < ranks.size(); ++w) {
    if (ranks[w] == PlausibilityOrder::kAbsent || !restrict.contains(w)) continue;
    if (ranks[w] < best) {
      best = ranks[w];
      m = 0;
    }
    if (ranks[w] == best) m |= std::uint64_t{1} << w;
  }
  return {ranks.size(), m};
}

/// The current conjecture: the most plausible worlds of the whole domain.
inline Proposition min_worlds(const PlausibilityOrder& order) {
  return min_worlds(order, Proposition::all(order.n_worlds()));
}

inline bool believes(const PlausibilitySpace& ps, const Proposition& p) {
  return min_worlds(ps.order()).subset_of(p);
}

/// Remaps ranks onto 0..k-1 preserving the induced preorder.
inline PlausibilityOrder normalize_ranks(const PlausibilityOrder& order) {
  using Rank = PlausibilityOrder::Rank;
  std::vector<Rank> present;
  for (Rank r : order.ranks()) {
    if (r != PlausibilityOrder::kAbsent) present.push_back(r);
  }
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());

  std::vector<Rank> out(order.ranks());
  for (Rank& r : out) {
    if (r == PlausibilityOrder::kAbsent) continue;
    r = static_cast<Rank>(std::lower_bound(present.begin(), present.end(), r) - present.begin());
  }
  return PlausibilityOrder(std::move(out));
}

/// Makes `x` the unique most plausible world; the rest keep their relative
/// order.
inline PlausibilityOrder upgrade(const PlausibilityOrder& order, WorldId x) {
  if (!order.in_domain(x)) {
    throw std::invalid_argument("cannot upgrade world " + std::to_string(x) +
                                ": not in the order's domain");
  }
  std::vector<PlausibilityOrder::Rank> out(order.ranks());
  for (std::size_t w = 0; w < out.size(); ++w) {
    if (out[w] != PlausibilityOrder::kAbsent) ++out[w];
  }
  out[x] = 0;
  return normalize_ranks(PlausibilityOrder(std::move(out)));
}

}  // namespace bbr
