#include <gtest/gtest.h>

#include "bbr/core.hpp"
#include "bbr/random.hpp"
#include "fixtures.hpp"

using namespace bbr;
using fx::R;
using fx::S;
using fx::T;
using fx::W;

constexpr auto kAbsent = PlausibilityOrder::kAbsent;

TEST(Proposition, SetOperations) {
  const Proposition a(4, {0, 1}), b(4, {1, 2});
  EXPECT_EQ((a & b), Proposition(4, {1}));
  EXPECT_EQ((a | b), Proposition(4, {0, 1, 2}));
  EXPECT_EQ(a.complement(), Proposition(4, {2, 3}));
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(Proposition(4, {1}).subset_of(a));
  EXPECT_FALSE(b.subset_of(a));
  EXPECT_TRUE(Proposition::none(4).empty());
  EXPECT_EQ(Proposition::all(4).size(), 4u);
  EXPECT_EQ(a.members(), (std::vector<WorldId>{0, 1}));
  EXPECT_FALSE(a.contains(9));
}

TEST(Proposition, SixtyFourWorlds) {
  const auto all = Proposition::all(64);
  EXPECT_EQ(all.size(), 64u);
  EXPECT_TRUE(all.contains(63));
  EXPECT_TRUE(all.complement().empty());
}

TEST(Proposition, RejectsOutOfRange) {
  EXPECT_THROW(Proposition(3, {3}), std::invalid_argument);
  EXPECT_THROW(Proposition(3, std::uint64_t{0b1000}), std::invalid_argument);
  EXPECT_THROW(Proposition(65, std::uint64_t{0}), std::invalid_argument);
}

TEST(EpistemicSpace, Validation) {
  EXPECT_THROW(EpistemicSpace(0, {}), std::invalid_argument);
  EXPECT_THROW(EpistemicSpace(65, {}), std::invalid_argument);
  EXPECT_THROW(EpistemicSpace(3, {Proposition(3, std::uint64_t{0})}), std::invalid_argument);
  EXPECT_THROW(EpistemicSpace(3, {Proposition(4, {0})}), std::invalid_argument);
  EXPECT_THROW(EpistemicSpace(3, {Proposition(3, {0}), Proposition(3, {0})}), std::invalid_argument);
  EXPECT_NO_THROW(EpistemicSpace(3, {Proposition(3, {0}), Proposition(3, {1, 2})}));
}

TEST(Signature, FourWorldSpace) {
  const auto sp = fx::cb::space();
  EXPECT_EQ(signature(*sp, W), (std::vector<ObsIndex>{fx::cb::P, fx::cb::Q}));
  EXPECT_EQ(signature(*sp, R), (std::vector<ObsIndex>{fx::cb::PBAR, fx::cb::QBAR}));
  EXPECT_THROW(signature(*sp, 4), std::out_of_range);
}

TEST(Signature, SingleFullObservable) {
  EpistemicSpace sp(3, {Proposition::all(3)});
  for (WorldId w = 0; w < 3; ++w) EXPECT_EQ(signature(sp, w), std::vector<ObsIndex>{0});
}

TEST(MinWorlds, Examples) {
  const auto o = fx::ab::order();
  EXPECT_EQ(min_worlds(o, Proposition(4, {R, S, T})), Proposition(4, {T, S}));
  EXPECT_TRUE(min_worlds(o, Proposition::none(4)).empty());
  EXPECT_EQ(min_worlds(PlausibilityOrder::flat(4), Proposition::all(4)), Proposition::all(4));
  EXPECT_EQ(min_worlds(o), Proposition(4, {W}));
  // Absent worlds never count.
  EXPECT_EQ(min_worlds(PlausibilityOrder({kAbsent, 1, 0}), Proposition(3, {0, 1})), Proposition(3, {1}));
}

TEST(Believes, Examples) {
  const auto sp = fx::ab::space();
  EXPECT_TRUE(believes(PlausibilitySpace(sp, PlausibilityOrder::flat(4)), Proposition::all(4)));
  const PlausibilitySpace ps(sp, fx::ab::order());
  EXPECT_TRUE(believes(ps, Proposition(4, {W})));
  EXPECT_FALSE(believes(ps, Proposition(4, {S})));
}

TEST(NormalizeRanks, Examples) {
  EXPECT_EQ(normalize_ranks(PlausibilityOrder({3, 7})), PlausibilityOrder({0, 1}));
  EXPECT_EQ(normalize_ranks(PlausibilityOrder({0, 0})), PlausibilityOrder({0, 0}));
  EXPECT_EQ(normalize_ranks(PlausibilityOrder({kAbsent, kAbsent})), PlausibilityOrder({kAbsent, kAbsent}));
  EXPECT_EQ(normalize_ranks(PlausibilityOrder({5, kAbsent, 2, 5})), PlausibilityOrder({1, kAbsent, 0, 1}));
}

TEST(NormalizeRanks, PreservesRelation) {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    std::vector<PlausibilityOrder::Rank> r(6);
    for (auto& x : r) x = uniform_below(rng, 5) == 0 ? kAbsent : static_cast<PlausibilityOrder::Rank>(rng() % 40);
    const PlausibilityOrder raw(r);
    const auto norm = normalize_ranks(raw);
    EXPECT_TRUE(norm.is_normalized());
    EXPECT_EQ(fx::relation_of(norm), fx::relation_of(raw));
  }
}

TEST(Upgrade, Examples) {
  EXPECT_EQ(upgrade(PlausibilityOrder({0, 0}), 1), PlausibilityOrder({1, 0}));
  EXPECT_EQ(upgrade(PlausibilityOrder({0, 1}), 0), PlausibilityOrder({0, 1}));
  // w, t, r keep their strict relative order behind s.
  EXPECT_EQ(upgrade(fx::ab::order(), S), PlausibilityOrder({1, 2, 0, 3}));
  EXPECT_THROW(upgrade(PlausibilityOrder({0, kAbsent}), 1), std::invalid_argument);
}

TEST(Upgrade, RelationalOracle) {
  Rng rng(5);
  for (int i = 0; i < 2000; ++i) {
    const auto o = fx::random_order(rng, 5);
    const auto dom = o.domain().members();
    if (dom.empty()) continue;
    const WorldId x = dom[uniform_below(rng, dom.size())];
    const auto up = upgrade(o, x);
    const auto old = fx::relation_of(o), now = fx::relation_of(up);
    ASSERT_TRUE(up.is_normalized());
    ASSERT_EQ(up.domain(), o.domain());
    for (WorldId u : dom)
      for (WorldId v : dom) {
        const bool expect = u == x || (v != x && old[u][v]);
        ASSERT_EQ(now[u][v], expect);
      }
  }
}

TEST(PlausibilityOrder, Basics) {
  const PlausibilityOrder o({0, kAbsent, 1});
  EXPECT_EQ(o.domain(), Proposition(3, {0, 2}));
  EXPECT_TRUE(o.is_normalized());
  EXPECT_FALSE(PlausibilityOrder({0, 2}).is_normalized());
  EXPECT_TRUE(PlausibilityOrder({kAbsent}).domain_empty());
  EXPECT_FALSE(o.in_domain(1));
  EXPECT_THROW(PlausibilityOrder(std::vector<PlausibilityOrder::Rank>(65, 0)), std::invalid_argument);
}

TEST(PlausibilitySpace, SizeMismatch) {
  EXPECT_THROW(PlausibilitySpace(fx::cb::space(), PlausibilityOrder::flat(3)), std::invalid_argument);
  EXPECT_THROW(PlausibilitySpace(std::shared_ptr<const EpistemicSpace>{}, PlausibilityOrder::flat(3)),
               std::invalid_argument);
}

TEST(Random, UniformBelowIsUnbiased) {
  Rng rng(3);
  std::vector<int> counts(6, 0);
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[uniform_below(rng, 6)];
  for (int c : counts) EXPECT_NEAR(c, n / 6, 500);
}

TEST(Random, ShuffleIsPermutation) {
  Rng rng(4);
  std::vector<int> v{1, 2, 3, 4, 5, 6, 7};
  shuffle(std::span<int>(v), rng);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{1, 2, 3, 4, 5, 6, 7}));
}

TEST(Random, MixSeedSeparatesIndices) {
  EXPECT_NE(mix_seed(0, 0), mix_seed(0, 1));
  EXPECT_NE(mix_seed(0, 1), mix_seed(1, 0));
  EXPECT_EQ(mix_seed(42, 7), mix_seed(42, 7));
}
