#include "pinchlab/appendix_fixtures.hpp"
#include "pinchlab/param_sturm.hpp"
#include "pinchlab/pinching.hpp"

#include <gtest/gtest.h>

using namespace pinchlab;

namespace {

const ParamSturmSeq& family_sequence() {
  static const ParamSturmSeq seq = build_param_sturm(build_q_k1_alpha_1_plus_7_over_n(), Rational(12));
  return seq;
}

}  // namespace

TEST(ParamSturm, FamilyCoefficientsMatchBuildQ) {
  const ParamPoly P = build_q_k1_alpha_1_plus_7_over_n();
  for (long n : {3L, 7L, 13L, 50L, 1000L}) EXPECT_EQ(specialize(P, Rational(n)), build_q(1, n, Rational(n + 7, n)));
}

TEST(ParamSturm, SignPatternsAtLargeN) {
  const auto& seq = family_sequence();
  ASSERT_EQ(seq.size(), 7u);
  const std::vector<int> z(kZeroTermSigns.begin(), kZeroTermSigns.end());
  const std::vector<int> l(kLeadTermSigns.begin(), kLeadTermSigns.end());
  EXPECT_EQ(seq.zero_signs_at_infinity(), z);
  EXPECT_EQ(seq.lead_signs_at_infinity(), l);
  EXPECT_EQ(seq.sigma_zero(), 3);
  EXPECT_EQ(seq.sigma_infinity(), 3);
}

TEST(ParamSturm, LedgerFactorsCertifiedPositive) {
  const auto& seq = family_sequence();
  ASSERT_EQ(seq.factor_ledger.size(), seq.size());
  for (const auto& f : seq.factor_ledger) {
    EXPECT_EQ(certified_sign_above(f.num(), Rational(12)), 1) << f;
    EXPECT_EQ(certified_sign_above(f.den(), Rational(12)), 1) << f;
  }
}

TEST(ParamSturm, ExtractedTermsAgreeWithFixtures) {
  const auto& seq = family_sequence();
  const auto& fx = AppendixFixtures::get();
  for (long n = 13; n <= 200; ++n) {
    const Rational N(n);
    for (std::size_t i = 0; i < 7; ++i) {
      ASSERT_EQ(seq.zero_terms[i].eval(N).sign(), fx.Z[i].eval(N).sign()) << "Z" << i << " n=" << n;
      ASSERT_EQ(seq.lead_terms[i].eval(N).sign(), fx.I[i].eval(N).sign()) << "I" << i << " n=" << n;
    }
  }
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_TRUE(sign_equivalent_above(seq.zero_terms[i], fx.Z[i], Rational(12))) << "Z" << i;
    EXPECT_TRUE(sign_equivalent_above(seq.lead_terms[i], fx.I[i], Rational(12))) << "I" << i;
  }
}

TEST(ParamSturm, SpecializationMatchesNumericSequence) {
  const auto& seq = family_sequence();
  const std::vector<Rational> probes = {Rational(1, 1000), Rational(1, 7), Rational(1, 2), Rational(1),
                                        Rational(3, 2), Rational(5),    Rational(40),   Rational(1000)};
  for (long n : {13L, 14L, 20L, 57L, 200L, 1000L}) {
    const auto special = seq.specialize_at(Rational(n));
    const SturmSeq direct = build_sturm(build_q(1, n, Rational(n + 7, n)));
    ASSERT_EQ(special.size(), direct.size()) << "n=" << n;
    for (std::size_t i = 0; i < special.size(); ++i) {
      EXPECT_TRUE(positively_proportional(direct.polys[i], special[i])) << "n=" << n << " element " << i;
      for (const auto& x : probes)
        ASSERT_EQ(special[i].eval(x).sign(), direct.polys[i].eval(x).sign()) << "n=" << n << " i=" << i;
    }
  }
}

TEST(ParamSturm, CertifiedSignHelpers) {
  EXPECT_EQ(certified_sign_above(poly_from_ints({-13, 1}), Rational(12)), 0);
  EXPECT_EQ(certified_sign_above(poly_from_ints({-12, 1}), Rational(12)), 1);
  EXPECT_EQ(certified_sign_above(poly_from_ints({5, -1, -1}), Rational(12)), -1);
  EXPECT_TRUE(sign_equivalent_above(poly_from_ints({-12, 1}), poly_from_ints({1}), Rational(12)));
  EXPECT_FALSE(sign_equivalent_above(poly_from_ints({-20, 1}), poly_from_ints({1}), Rational(12)));
  EXPECT_TRUE(positively_proportional(poly_from_ints({1, 2}), poly_from_ints({3, 6})));
  EXPECT_FALSE(positively_proportional(poly_from_ints({1, 2}), poly_from_ints({-3, -6})));
}
