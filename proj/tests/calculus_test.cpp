#include "bamboo/calculus.hpp"
#include "bamboo/constructors.hpp"

#include "random_terms.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bamboo;
using L = LegSelector;

namespace {

FormalSum one_pointed(int genus, int psi) {
  return FormalSum(make_term(Bamboo{{Vertex{genus, 0, psi, std::nullopt}}, 0, 1, 0}));
}

FormalSum three_pointed(std::vector<Vertex> vs, Leg left = 1, Leg right = 2, Leg extra = 3) {
  return FormalSum(make_term(Bamboo{std::move(vs), left, right, extra}));
}

}  // namespace

TEST(MulPsi, Basics) {
  EXPECT_EQ(mul_psi(psi_class(1, 0, 2), L::Leg1, 1), psi_class(1, 1, 2));
  EXPECT_EQ(degree(mul_psi(psi_class(2, 1, 2), L::Leg2, 3).begin()->first), 6);
  EXPECT_THROW(mul_psi(psi_class(1, 0, 2), L::Leg3, 1), std::invalid_argument);
  for (int g = 2; g <= 4; ++g)
    for (int d = 0; d <= 2 * g; ++d)
      for (int k = 2; k <= g + 1; ++k) EXPECT_TRUE(mul_psi(make_e(g, d, k), L::Leg3, 1).empty());
}

TEST(MulPsi, CommutesWithDiamondAwayFromNode) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    FormalSum a(testing_util::random_two_pointed(rng)), b(testing_util::random_two_pointed(rng));
    EXPECT_EQ(mul_psi(diamond(a, b), L::Leg1, 2), diamond(mul_psi(a, L::Leg1, 2), b));
    EXPECT_EQ(mul_psi(diamond(a, b), L::Leg2, 1), diamond(a, mul_psi(b, L::Leg2, 1)));
  }
}

TEST(Pushforward, StringOnEndVertex) {
  EXPECT_EQ(pushforward_forget(psi_class(1, 2, 0), L::Leg2), one_pointed(1, 1));
  for (int g = 1; g <= 3; ++g) EXPECT_TRUE(pushforward_forget(psi_class(g, 0, 0), L::Leg2).empty());
}

TEST(Pushforward, DilatonAndKappa) {
  EXPECT_EQ(pushforward_forget(psi_class(2, 3, 1), L::Leg2), Rational(3) * one_pointed(2, 3));
  EXPECT_THROW(pushforward_forget(psi_class(2, 0, 2), L::Leg2), KappaUnsupported);
}

TEST(Pushforward, ContractsRationalVertex) {
  // (0; 1, 3 | node) - (1; psi^2 | 2): forgetting leg 3 moves leg 1 onto the genus-1 vertex
  FormalSum t = three_pointed({Vertex{0, 0, 0, 0}, Vertex{1, 2, 1, std::nullopt}});
  EXPECT_EQ(pushforward_forget(t, L::Leg3), psi_class(1, 2, 1));
  FormalSum mid = three_pointed({Vertex{1, 0, 1, std::nullopt}, Vertex{0, 0, 0, 0}, Vertex{2, 3, 0, std::nullopt}});
  FormalSum merged(make_term(Bamboo{{Vertex{1, 0, 1, std::nullopt}, Vertex{2, 3, 0, std::nullopt}}, 1, 2, 0}));
  EXPECT_EQ(pushforward_forget(mid, L::Leg3), merged);
}

TEST(Pushforward, StringOnInnerVertexDistributes) {
  // leg 3 with psi^0 on a 3-valent genus-1 vertex with psi (2, 1)
  FormalSum t = three_pointed({Vertex{1, 2, 1, 0}});
  FormalSum expected = psi_class(1, 1, 1) + psi_class(1, 2, 0);
  EXPECT_EQ(pushforward_forget(t, L::Leg3), expected);
}

TEST(Pushforward, PropositionForSmallGenus) {
  for (int g = 1; g <= 6; ++g) EXPECT_EQ(pushforward_forget(reflect(make_B(g)), L::Leg2), make_B_onepoint(g)) << g;
}

TEST(Pullback, DisplayedFormula) {
  // pi^*(psi_1^2 | M(1,2)) = psi_1^2 | M(1,3) - 1|M(0,3) <> psi_1 | M(1,2)
  FormalSum lhs = pullback_forget(psi_class(1, 2, 0));
  FormalSum expected = three_pointed({Vertex{1, 2, 0, 0}}) - diamond(FormalSum(unit03()), psi_class(1, 1, 0));
  EXPECT_EQ(lhs, expected);
}

TEST(Pullback, PushPullVanishes) {
  for (int g = 1; g <= 4; ++g) EXPECT_TRUE(pushforward_forget(pullback_forget(make_B(g)), L::Leg3).empty()) << g;
  std::mt19937 rng(12);
  for (int i = 0; i < 100; ++i) {
    FormalSum x(testing_util::random_two_pointed(rng));
    EXPECT_TRUE(pushforward_forget(pullback_forget(x), L::Leg3).empty());
  }
}

TEST(Pullback, Dilaton) {
  for (int g = 1; g <= 3; ++g) {
    FormalSum x = make_B(g);
    EXPECT_EQ(pushforward_forget(mul_psi(pullback_forget(x), L::Leg3, 1), L::Leg3), Rational(2 * g) * x);
  }
  std::mt19937 rng(13);
  for (int i = 0; i < 100; ++i) {
    Term t = testing_util::random_two_pointed(rng);
    FormalSum x(t);
    EXPECT_EQ(pushforward_forget(mul_psi(pullback_forget(x), L::Leg3, 1), L::Leg3),
              Rational(2 * t.bamboo.total_genus()) * x);
  }
}

TEST(Pullback, OnePointedVariant) {
  // pi_2^*(psi_1 | M(1,1)) = psi_1 | M(1,2) - bubble with legs 1, 2
  FormalSum lhs = pullback_forget(one_pointed(1, 1));
  FormalSum expected = psi_class(1, 1, 0) -
                       FormalSum(make_term(Bamboo{{Vertex{1, 0, 0, std::nullopt}, Vertex{0, 0, 0, 0}}, 0, 1, 2}));
  EXPECT_EQ(lhs, expected);
}

TEST(SepDivisor, FirstCase) {
  EXPECT_EQ(mul_sep_divisor(psi_class(2, 0, 4), 1), make_c({1, 1}, {0, 4}));
}

TEST(SepDivisor, SecondCase) {
  FormalSum lhs = mul_sep_divisor(make_c({1, 1}, {0, 3}), 1);
  FormalSum expected = -make_c({1, 1}, {1, 3}) - diamond(psi_class(1, 0, 0), psi_class(1, 1, 3));
  EXPECT_EQ(lhs, expected);
}

TEST(SepDivisor, DegreeAndRange) {
  for (int g = 2; g <= 4; ++g)
    for (int g1 = 1; g1 < g; ++g1)
      for (const auto& [t, c] : mul_sep_divisor(make_B(g), g1)) EXPECT_EQ(degree(t), 2 * g + 1);
  EXPECT_THROW(mul_sep_divisor(psi_class(2, 0, 4), 2), std::invalid_argument);
  EXPECT_THROW(mul_sep_divisor(psi_class(2, 0, 4), 0), std::invalid_argument);
}

TEST(Delta0, Examples) {
  for (int g = 1; g <= 4; ++g) {
    FormalSum top = three_pointed({Vertex{g, 2 * g, 0, 0}});
    EXPECT_TRUE(mul_delta013(top).empty());
  }
  FormalSum far = three_pointed({Vertex{1, 0, 0, std::nullopt}, Vertex{1, 0, 2, 0}});
  EXPECT_TRUE(mul_delta013(far).empty());
}

TEST(Delta0, BubblesOffWhenLegsShareAVertex) {
  FormalSum t = three_pointed({Vertex{2, 0, 3, 0}});
  FormalSum expected = three_pointed({Vertex{0, 0, 0, 0}, Vertex{2, 0, 3, std::nullopt}});
  EXPECT_EQ(mul_delta013(t), expected);
}

TEST(Delta0, ExcessCase) {
  FormalSum t = three_pointed({Vertex{0, 0, 0, 0}, Vertex{2, 1, 3, std::nullopt}});
  FormalSum expected = -three_pointed({Vertex{0, 0, 0, 0}, Vertex{2, 2, 3, std::nullopt}});
  EXPECT_EQ(mul_delta013(t), expected);
}

TEST(Delta0, PulledBackBVanishesOnTheOldLegPair) {
  // With the new leg labelled 3, the divisor pairing the new leg with the
  // untouched end leg is delta_0^{12}.
  for (int g = 1; g <= 4; ++g)
    EXPECT_TRUE(mul_delta0_pair(pullback_forget(make_B(g)), L::Leg1, L::Leg2).empty()) << g;
}

TEST(Delta0, LegOneAndNewLegInOurLabelling) {
  FormalSum r = mul_delta013(pullback_forget(make_B(1)));
  FormalSum expected = three_pointed({Vertex{0, 0, 0, 0}, Vertex{1, 0, 2, std::nullopt}});
  EXPECT_EQ(r, expected);
}

TEST(Omega, SingleVertex) {
  FormalSum w = omega_apply(psi_class(2, 0, 4), OmegaClass{OmegaKind::Irr, 0});
  ASSERT_EQ(w.size(), 1u);
  EXPECT_TRUE(w.begin()->first.omega.has_value());
  EXPECT_EQ(degree(w.begin()->first), 5);
}

TEST(Omega, Leibniz) {
  std::mt19937 rng(14);
  for (OmegaClass w : {OmegaClass{OmegaKind::Irr, 0}, OmegaClass{OmegaKind::SepOff, 1}, OmegaClass{OmegaKind::SepOff, 2}})
    for (int i = 0; i < 100; ++i) {
      FormalSum a(testing_util::random_two_pointed(rng)), b(testing_util::random_two_pointed(rng));
      EXPECT_EQ(omega_apply(diamond(a, b), w), diamond(omega_apply(a, w), b) + diamond(a, omega_apply(b, w)));
    }
}

TEST(Omega, SepOffBelowGenusVanishes) {
  EXPECT_TRUE(omega_apply(make_c({1, 1, 1}, {0, 1, 2}), OmegaClass{OmegaKind::SepOff, 2}).empty());
  EXPECT_EQ(omega_apply(make_c({1, 2}, {0, 1}), OmegaClass{OmegaKind::SepOff, 2}).size(), 1u);
}
