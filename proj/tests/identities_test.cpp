#include "bamboo/deep.hpp"

#include <gtest/gtest.h>

using namespace bamboo;

namespace {

SuiteOptions fast() {
  SuiteOptions o;
  o.direct_psi_eval = false;
  return o;
}

bool settled(IdentityOutcome o) { return o == IdentityOutcome::Certified || o == IdentityOutcome::ExactZero; }

}  // namespace

TEST(Symmetry, GenusOneIsOneCorTwo) {
  IdentityReport r = check_symmetry(1);
  ASSERT_EQ(r.outcome, IdentityOutcome::Certified);
  ASSERT_EQ(r.certificate->entries.size(), 1u);
  EXPECT_EQ(r.certificate->entries[0].instance.rel, cor2(1, 0));
  EXPECT_EQ(abs(r.certificate->entries[0].coeff), Rational(1));
}

TEST(Irr, GenusOneIsOneSchema) {
  // omega on psi_2^2|M(1,2) is a single marked term
  EXPECT_EQ(omega_target(1, OmegaClass{OmegaKind::Irr, 0}).size(), 1u);
  IdentityReport r = check_irr(1);
  ASSERT_EQ(r.outcome, IdentityOutcome::Certified);
  ASSERT_EQ(r.certificate->entries.size(), 1u);
  EXPECT_EQ(r.certificate->entries[0].instance.rel, omega_schema(OmegaClass{OmegaKind::Irr, 0}, 1, 2));
}

TEST(PullbackPsi, MirrorFormGenusOneIsOneCorOneB) {
  // psi_1 pi^*(refl B^1) - B^1 <> 1|M(0,3) is -Cor1b(1,1,0) itself
  FormalSum t = pullback_target_mirror(1);
  CertifyOutcome out = certify_zero(t);
  ASSERT_EQ(out.kind, OutcomeKind::Certified);
  ASSERT_EQ(out.certificate->entries.size(), 1u);
  const CertEntry& e = out.certificate->entries[0];
  EXPECT_EQ(e.instance.rel, cor1b(1, 1, 0));
  EXPECT_EQ(e.coeff, Rational(-1));
}

TEST(PullbackPsi, MirrorAndTheoremFormsDifferByPulledBackSymmetry) {
  for (int g = 1; g <= 3; ++g) {
    FormalSum diff = pullback_target(g) - pullback_target_mirror(g);
    FormalSum expected = mul_psi(pullback_forget(symmetry_target(g)), LegSelector::Leg1, 1);
    for (auto [g1, g2] : splittings(g)) expected -= diamond(make_B(g1), pullback_forget(symmetry_target(g2)));
    EXPECT_EQ(diff, expected) << g;
    EXPECT_EQ(certify_zero(pullback_target_mirror(g)).kind, OutcomeKind::Certified) << g;
  }
}

TEST(Split, ExactStageMatchesCorrectionLines) {
  for (int g = 2; g <= 4; ++g)
    for (int g1 = 1; g1 < g; ++g1) EXPECT_EQ(split_target(g, g1), split_correction(g, g1)) << g << " " << g1;
}

TEST(Split, CorrectionContainsTheCLine) {
  // g=2, g1=1, m=1: (-1)^{m+1} c(1,1,1) <> (psi_2^{d} + psi_1 psi_2^{d-1}) with c = psi_2^1|1, d = 3
  FormalSum line = diamond(psi_class(1, 0, 1), psi_class(1, 0, 3) + psi_class(1, 1, 2));
  FormalSum corr = split_correction(2, 1);
  for (const auto& [t, c] : line) EXPECT_EQ(corr.coefficient(t), c) << t;
}

TEST(PsiEval, ExactChecks) {
  for (int g = 1; g <= 3; ++g) {
    auto checks = psi_eval_exact_checks(g);
    ASSERT_EQ(checks.size(), 4u);
    for (const auto& c : checks) EXPECT_TRUE(c.passed) << g << " " << c.name;
  }
}

TEST(PsiEval, GenusOneBothSidesVanish) {
  // psi_1 psi_2^2 on M(1,2) is psi_1 B^1; there are no splittings
  EXPECT_TRUE(psi_eval_target(1) == FormalSum(single_vertex(1, 1, 2)));
  EXPECT_TRUE(pushforward_forget(mul_psi(mul_psi(pullback_forget(make_B(1)), LegSelector::Leg1, 1), LegSelector::Leg3, 1),
                                 LegSelector::Leg3) == Rational(2) * psi_eval_target(1));
}

TEST(PsiEval, RoutedThroughPullback) {
  IdentityReport r = check_psi_eval(2, fast());
  EXPECT_EQ(r.outcome, IdentityOutcome::Certified);
  EXPECT_EQ(r.target, pullback_target(2));
  EXPECT_EQ(r.note, "via pullback_psi");
}

TEST(Pushforward, ExactThroughGenusSix) {
  for (int g = 1; g <= 6; ++g) EXPECT_EQ(check_pushforward(g).outcome, IdentityOutcome::ExactZero) << g;
}

TEST(Recursion, SideConditionsAndCertificate) {
  for (int g = 1; g <= 3; ++g) {
    IdentityReport r = check_recursion(g, fast());
    ASSERT_EQ(r.exact_checks.size(), 2u);
    for (const auto& c : r.exact_checks) EXPECT_TRUE(c.passed) << c.name;
    EXPECT_EQ(r.outcome, IdentityOutcome::Certified) << g;
  }
}

TEST(Suite, GenusTwoSettles) {
  const SuiteOptions o = fast();
  for (auto r : {check_symmetry(2, o), check_irr(2, o), check_sep_off(2, 1, o), check_split(2, 1, o),
                 check_pullback_psi(2, o), check_psi_eval(2, o), check_pushforward(2, o), check_recursion(2, o)}) {
    EXPECT_TRUE(settled(r.outcome)) << r.key() << " " << identity_outcome_name(r.outcome);
    if (r.outcome == IdentityOutcome::Certified) EXPECT_TRUE(verify_certificate(*r.certificate, *r.target));
  }
}

TEST(Suite, ParameterChecks) {
  EXPECT_THROW(check_sep_off(2, 2), std::invalid_argument);
  EXPECT_THROW(check_split(2, 0), std::invalid_argument);
  EXPECT_THROW(check_deep_symmetry(2, 3), std::invalid_argument);
}

TEST(Deep, PartialSumsReachTheTargets) {
  for (int g = 1; g <= 4; ++g) {
    FormalSum s;
    for (int l = 1; l <= g; ++l) s += symmetry_E(g, l);
    EXPECT_EQ(s, symmetry_target(g));
    EXPECT_TRUE(symmetry_partial_rhs(g, g).empty());
    for (const OmegaClass& w : {OmegaClass{OmegaKind::Irr, 0}, OmegaClass{OmegaKind::SepOff, 1}}) {
      FormalSum o;
      for (int k = 1; k <= g; ++k) o += omega_E(g, w, k);
      EXPECT_EQ(o, omega_target(g, w));
      EXPECT_TRUE(omega_partial_rhs(g, w, g).empty());
    }
    for (int g1 = 1; g1 < g; ++g1) {
      FormalSum e;
      for (int l = 1; l <= g - g1; ++l) e += split_E(g, g1, l);
      EXPECT_EQ(e, split_correction(g, g1));
      EXPECT_TRUE(split_partial_rhs(g, g1, g - g1).empty());
    }
  }
}

TEST(Deep, BaseCases) {
  // E_1 = psi_2^{2g} - psi_1^{2g}
  EXPECT_EQ(symmetry_E(3, 1), psi_class(3, 0, 6) - psi_class(3, 6, 0));
  // omega E_1 marks the single vertex
  EXPECT_EQ(omega_E(2, OmegaClass{OmegaKind::Irr, 0}, 1), omega_apply(psi_class(2, 0, 4), OmegaClass{OmegaKind::Irr, 0}));
}

TEST(Deep, StepsCertifyThroughGenusThree) {
  const SuiteOptions o = fast();
  for (int g = 1; g <= 3; ++g) {
    for (int l = 1; l <= g; ++l) EXPECT_EQ(check_deep_symmetry(g, l, o).outcome, IdentityOutcome::Certified);
    for (int k = 1; k <= g; ++k) {
      EXPECT_EQ(check_deep_omega(g, OmegaClass{OmegaKind::Irr, 0}, k, o).outcome, IdentityOutcome::Certified);
      for (int h = 1; h < g; ++h)
        EXPECT_EQ(check_deep_omega(g, OmegaClass{OmegaKind::SepOff, h}, k, o).outcome, IdentityOutcome::Certified);
    }
    for (int g1 = 1; g1 < g; ++g1)
      for (int l = 1; l <= g - g1; ++l) EXPECT_EQ(check_deep_split(g, g1, l, o).outcome, IdentityOutcome::Certified);
  }
}
