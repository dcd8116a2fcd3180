#include <gtest/gtest.h>

#include "bbr/revision.hpp"
#include "fixtures.hpp"

using namespace bbr;
using fx::R;
using fx::S;
using fx::T;
using fx::W;

constexpr auto kAbsent = PlausibilityOrder::kAbsent;

namespace {
PlausibilitySpace ab_space() { return {fx::ab::space(), fx::ab::order()}; }
const Proposition kPbar(4, {R, S, T});
}  // namespace

TEST(Cond, Examples) {
  const PlausibilitySpace flat(fx::cb::space(), PlausibilityOrder::flat(4));
  EXPECT_EQ(cond1(flat, Proposition(4, {W, T})).order(), PlausibilityOrder({0, 0, kAbsent, kAbsent}));
  EXPECT_EQ(cond1(ab_space(), Proposition::all(4)), ab_space());
  EXPECT_EQ(cond1(ab_space(), Proposition(4, {S})).order(), PlausibilityOrder({kAbsent, kAbsent, 0, kAbsent}));
  EXPECT_TRUE(cond1(ab_space(), Proposition::none(4)).order().domain_empty());
}

TEST(Lex, Examples) {
  EXPECT_EQ(lex1(ab_space(), kPbar).order(), PlausibilityOrder({2, 0, 0, 1}));
  EXPECT_EQ(lex1(ab_space(), Proposition::all(4)), ab_space());
  EXPECT_EQ(lex1(ab_space(), Proposition::none(4)), ab_space());
}

TEST(Mini, Examples) {
  EXPECT_EQ(mini1(ab_space(), kPbar).order(), PlausibilityOrder({1, 0, 0, 2}));
  EXPECT_EQ(mini1(ab_space(), Proposition(4, {W, R})), ab_space());
  EXPECT_EQ(mini1(ab_space(), Proposition::none(4)), ab_space());
}

TEST(Mini, PromotesAboveStrictlyBetterWorlds) {
  // Ranks 0/1/2 with p = {2}: the single p-world must end strictly first.
  const PlausibilityOrder o({0, 1, 2});
  EXPECT_EQ(mini_order(o, Proposition(3, {2})), PlausibilityOrder({1, 2, 0}));
}

TEST(Operators, RelationalOracles) {
  Rng rng(2024);
  for (int i = 0; i < 3000; ++i) {
    const std::size_t n = 1 + uniform_below(rng, 6);
    const auto o = fx::random_order(rng, n);
    const auto p = fx::random_prop(rng, n);
    const auto c = cond_order(o, p), l = lex_order(o, p), m = mini_order(o, p);
    ASSERT_EQ(fx::relation_of(c), fx::cond_relation(o, p));
    ASSERT_EQ(fx::relation_of(l), fx::lex_relation(o, p));
    ASSERT_EQ(fx::relation_of(m), fx::mini_relation(o, p));
    ASSERT_TRUE(c.is_normalized() && l.is_normalized() && m.is_normalized());
  }
}

TEST(CondPlus, UniqueMinimumMatchesCond) {
  Rng rng(1);
  const auto got = cond1_plus(ab_space(), Proposition(4, {W, S}), rng);
  EXPECT_EQ(got, cond1(ab_space(), Proposition(4, {W, S})));
}

TEST(CondPlus, HalfAndHalf) {
  Rng rng(17);
  int s = 0, t = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const auto got = cond1_plus(ab_space(), Proposition(4, {T, S}), rng).order();
    ASSERT_EQ(got.domain().size(), 1u);
    if (got.in_domain(S)) ++s;
    if (got.in_domain(T)) ++t;
  }
  EXPECT_EQ(s + t, n);
  EXPECT_NEAR(static_cast<double>(s) / n, 0.5, 0.03);
}

TEST(CondPlus, DisjointGivesEmpty) {
  Rng rng(0);
  EXPECT_TRUE(cond1_plus(ab_space(), Proposition::none(4), rng).order().domain_empty());
}

TEST(LexPlus, UpgradesOneOfTiedMinima) {
  Rng rng(19);
  int s = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const auto got = lex1_plus(ab_space(), kPbar, rng).order();
    const auto best = min_worlds(got);
    ASSERT_EQ(best.size(), 1u);
    ASSERT_TRUE(best.contains(S) || best.contains(T));
    ASSERT_EQ(got.domain(), Proposition::all(4));
    if (best.contains(S)) ++s;
  }
  EXPECT_NEAR(static_cast<double>(s) / n, 0.5, 0.03);
}

TEST(Plus, UniqueMinimumUnchanged) {
  Rng rng(3);
  const Proposition wr(4, {W, R});
  EXPECT_EQ(lex1_plus(ab_space(), wr, rng), lex1(ab_space(), wr));
  EXPECT_EQ(mini1_plus(ab_space(), wr, rng), mini1(ab_space(), wr));
}

TEST(Iterate, Examples) {
  using namespace fx::cb;
  const PlausibilitySpace flat(space(), PlausibilityOrder::flat(4));
  EXPECT_EQ(iterate(OneStepMethod::Cond, flat, {P, Q}).order(),
            PlausibilityOrder({0, kAbsent, kAbsent, kAbsent}));
  for (auto m : {OneStepMethod::Cond, OneStepMethod::Lex, OneStepMethod::Mini}) {
    EXPECT_EQ(iterate(m, flat, {}), flat);
  }
  const PlausibilitySpace ps(space(), PlausibilityOrder({2, 0, 1, 1}));
  EXPECT_EQ(iterate(OneStepMethod::Lex, ps, {P, P}), lex1(ps, space()->observable(P)));
  EXPECT_THROW(iterate(OneStepMethod::Lex, ps, {9}), std::out_of_range);
}

TEST(Iterate, MiniReachesActualOnlyAfterQbar) {
  using namespace fx::ab;
  auto ps = ab_space();
  ps = mini1(ps, space()->observable(PBAR));
  EXPECT_EQ(min_worlds(ps.order()), Proposition(4, {T, S}));
  ps = mini1(ps, space()->observable(PBAR));
  EXPECT_EQ(min_worlds(ps.order()), Proposition(4, {T, S}));
  ps = mini1(ps, space()->observable(QBAR));
  EXPECT_EQ(min_worlds(ps.order()), Proposition(4, {S}));
}

TEST(Bridge, LexOnAnchorEqualsMini) {
  Rng rng(99);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 1 + uniform_below(rng, 7);
    const auto o = fx::random_order(rng, n);
    const auto p = fx::random_prop(rng, n);
    ASSERT_EQ(lex_order(o, min_worlds(o, p)), mini_order(o, p));
  }
}

TEST(MethodNames, ToString) {
  EXPECT_EQ(to_string(OneStepMethod::Cond), "cond");
  EXPECT_EQ(to_string(OneStepMethod::Lex), "lex");
  EXPECT_EQ(to_string(OneStepMethod::Mini), "mini");
}
