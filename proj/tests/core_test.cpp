#include "bamboo/calculus.hpp"
#include "bamboo/constructors.hpp"
#include "bamboo/core.hpp"

#include "random_terms.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace bamboo;
using testing_util::random_three_pointed;
using testing_util::random_two_pointed;

TEST(Rational, Canonical) {
  EXPECT_EQ(to_fraction_string(make_rational(2, -4)), "-1/2");
  EXPECT_EQ(to_fraction_string(make_rational(3)), "3/1");
  EXPECT_EQ(parse_fraction_string("6/4"), make_rational(3, 2));
  EXPECT_EQ(parse_fraction_string("-7"), make_rational(-7));
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
  EXPECT_THROW(parse_fraction_string("x/2"), std::invalid_argument);
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree(single_vertex(1, 0, 2)), 2);
  EXPECT_EQ(degree(make_c({1, 1}, {1, 2}).begin()->first), 4);
  for (int g = 1; g <= 6; ++g)
    for (const auto& [t, c] : make_B(g)) EXPECT_EQ(degree(t), 2 * g);
}

TEST(Validation, RejectsBadVertices) {
  EXPECT_THROW(make_term(Bamboo{{Vertex{0, 0, 0, std::nullopt}}, 1, 2, 0}), std::invalid_argument);
  EXPECT_THROW(make_term(Bamboo{{Vertex{0, 1, 0, 0}}, 1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(make_term(Bamboo{{Vertex{1, 0, 0, std::nullopt}}, 1, 3, 0}), std::invalid_argument);
  EXPECT_THROW(make_term(Bamboo{{Vertex{1, 0, 0, 0}}, 1, 2, 0}), std::invalid_argument);
  EXPECT_NO_THROW(unit03());
}

TEST(Normalize, OnePointedLegOnTheRight) {
  Term t = make_term(Bamboo{{Vertex{1, 2, 0, std::nullopt}, Vertex{1, 0, 0, std::nullopt}}, 1, 0, 0});
  EXPECT_EQ(t.bamboo.right_leg, 1);
  EXPECT_EQ(t.bamboo.left_leg, 0);
  EXPECT_EQ(t.bamboo.vertices.back().right_psi, 2);
}

TEST(Normalize, ExtraLegOnBareEndBecomesEndLeg) {
  Term t = make_term(Bamboo{{Vertex{1, 0, 0, std::nullopt}, Vertex{2, 0, 0, 3}}, 1, 0, 2});
  EXPECT_EQ(t.bamboo.extra_leg, 0);
  EXPECT_EQ(t.bamboo.profile(), Profile::TwoPointed);
  EXPECT_EQ(t.bamboo.vertices.back().right_psi, 3);
}

TEST(Normalize, EndVertexLegsAreInterchangeable) {
  // leg 1 at the end with leg 3 on the side, or the other way round: one graph
  Term a = make_term(Bamboo{{Vertex{1, 2, 0, 1}, Vertex{1, 0, 3, std::nullopt}}, 1, 2, 3});
  Term b = make_term(Bamboo{{Vertex{1, 1, 0, 2}, Vertex{1, 0, 3, std::nullopt}}, 3, 2, 1});
  EXPECT_EQ(a, b);
  EXPECT_EQ(b.bamboo.left_leg, 1);
  Term c = make_term(Bamboo{{Vertex{2, 4, 5, 6}}, 3, 1, 2});
  EXPECT_EQ(c, make_term(Bamboo{{Vertex{2, 5, 6, 4}}, 1, 2, 3}));
}

TEST(CanonicalKey, EqualForEqualTerms) {
  std::mt19937 rng(1);
  for (int i = 0; i < 200; ++i) {
    Term t = random_three_pointed(rng);
    Term u = make_term(t.bamboo, t.omega);
    EXPECT_EQ(canonical_key(t), canonical_key(u));
  }
}

TEST(CanonicalKey, DistinctUnderReflectionOfAsymmetricTerm) {
  Term t = single_vertex(1, 0, 2);
  EXPECT_NE(canonical_key(t), canonical_key(reflect(t)));
}

TEST(CanonicalKey, InjectiveAndOrderPreserving) {
  std::mt19937 rng(2);
  std::vector<Term> terms;
  for (int i = 0; i < 300; ++i) terms.push_back(i % 2 ? random_two_pointed(rng) : random_three_pointed(rng));
  // structural mutations
  for (int i = 0; i < 300; ++i) {
    Term t = terms[std::size_t(i)];
    t.bamboo.vertices[0].genus += 1;
    terms.push_back(make_term(t.bamboo));
    Term u = terms[std::size_t(i)];
    u.bamboo.vertices.back().right_psi += 1;
    terms.push_back(make_term(u.bamboo));
  }
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const int c = compare_term(terms[i], terms[j]);
      const auto ki = canonical_key(terms[i]), kj = canonical_key(terms[j]);
      EXPECT_EQ(c == 0, ki == kj);
      EXPECT_EQ(c < 0, ki < kj);
    }
}

TEST(CanonicalKey, SortingBTwoIsDeterministic) {
  auto keys = [] {
    std::vector<std::string> ks;
    for (const auto& [t, c] : make_B(2)) ks.push_back(canonical_key(t));
    return ks;
  };
  auto a = keys(), b = keys();
  EXPECT_EQ(a, b);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
}

TEST(Reflect, SingleVertex) {
  EXPECT_EQ(reflect(psi_class(1, 0, 2)), psi_class(1, 2, 0));
}

TEST(Reflect, Involution) {
  std::mt19937 rng(3);
  for (int i = 0; i < 500; ++i) {
    Term t = i % 3 ? random_two_pointed(rng) : random_three_pointed(rng);
    EXPECT_EQ(reflect(reflect(t)), t);
    EXPECT_EQ(degree(reflect(t)), degree(t));
  }
}

TEST(Reflect, RejectsOnePointed) {
  EXPECT_THROW(reflect(make_B_onepoint(1)), std::invalid_argument);
}

TEST(Reflect, AntiHomomorphism) {
  std::mt19937 rng(4);
  for (int i = 0; i < 200; ++i) {
    FormalSum a(random_two_pointed(rng)), b(random_two_pointed(rng));
    EXPECT_EQ(reflect(diamond(a, b)), diamond(reflect(b), reflect(a)));
  }
}

TEST(FormalSum, Arithmetic) {
  FormalSum a = psi_class(1, 0, 2), b = psi_class(1, 2, 0), c = make_c({1, 1}, {0, 3});
  EXPECT_EQ((a + b) + c, a + (b + c));
  EXPECT_TRUE((a - a).empty());
  FormalSum h = make_rational(1, 2) * a + make_rational(1, 2) * a;
  EXPECT_EQ(h, a);
  EXPECT_EQ(a.grade(), std::optional<int>(2));
  EXPECT_FALSE((a + c).homogeneous());
  EXPECT_EQ((Rational(0) * a).size(), 0u);
}

TEST(Diamond, Basics) {
  EXPECT_EQ(diamond(psi_class(1, 0, 1), psi_class(1, 0, 2)), make_c({1, 1}, {1, 2}));
  FormalSum x = psi_class(2, 1, 3);
  EXPECT_EQ(diamond(unit_sum(), x), x);
  EXPECT_EQ(diamond(x, unit_sum()), x);
  EXPECT_EQ(degree(diamond(x, x).begin()->first), 2 * degree(x.begin()->first) + 1);
}

TEST(Diamond, Associative) {
  std::mt19937 rng(5);
  for (int i = 0; i < 200; ++i) {
    FormalSum a(random_two_pointed(rng)), b(random_two_pointed(rng)), c(random_two_pointed(rng));
    EXPECT_EQ(diamond(diamond(a, b), c), diamond(a, diamond(b, c)));
  }
  FormalSum a(random_two_pointed(rng)), c(random_two_pointed(rng));
  FormalSum u(unit03());
  EXPECT_EQ(diamond(diamond(a, u), c), diamond(a, diamond(u, c)));
}

TEST(Diamond, RejectsIncompatible) {
  EXPECT_THROW(diamond(FormalSum(unit03()), FormalSum(unit03())), std::invalid_argument);
  EXPECT_THROW(diamond(make_B_onepoint(1), psi_class(1, 0, 0)), std::invalid_argument);
}
