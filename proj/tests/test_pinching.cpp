#include "pinchlab/appendix_fixtures.hpp"
#include "pinchlab/pinching.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pinchlab;

namespace {

struct TableRow {
  long n;
  long k;
  Rational c0_lo;
};

// Exact endpoints from an independent computer-algebra bisection with the same
// caps and precision 1/100.
const std::vector<TableRow> kReferenceTable = {
    {3, 1, Rational(1867, 512)}, {4, 1, Rational(751, 256)}, {5, 1, Rational(41, 16)},
    {6, 1, Rational(149, 64)},   {7, 1, Rational(139, 64)},  {8, 1, Rational(263, 128)},
    {9, 1, Rational(501, 256)},  {10, 1, Rational(967, 512)}, {11, 1, Rational(937, 512)},
    {12, 1, Rational(57, 32)},   {3, 2, Rational(3181, 3200)}, {4, 2, Rational(3181, 3200)},
    {9, 3, Rational(479, 960)},  {3, 3, Rational(479, 960)},  {5, 5, Rational(49, 200)},
};

// Truncated reference values for n = 3..12, k = 1.
const std::vector<double> kReferenceK1 = {3.64, 2.93, 2.56, 2.33, 2.17, 2.05, 1.96, 1.89, 1.83, 1.78};

}  // namespace

TEST(BuildQ, Examples) {
  EXPECT_EQ(build_q(1, 3, Rational(1)), poly_from_ints({-16, 0, -24, 0, -12, 0, -2}));
  EXPECT_EQ(build_q(2, 5, Rational(1)).coeff(0), Rational(-81));
}

TEST(BuildQ, IdentityAtInverseK) {
  for (long n = 3; n <= 10; ++n)
    for (long k = 1; k <= n; ++k) ASSERT_EQ(build_q(k, n, Rational(1, k)), q_at_inverse_k_closed_form(k, n)) << n << k;
}

TEST(BuildQ, ParameterErrors) {
  EXPECT_THROW(build_q(4, 3, Rational(1)), std::invalid_argument);
  EXPECT_THROW(build_q(0, 3, Rational(1)), std::invalid_argument);
  EXPECT_THROW(build_q(1, 2, Rational(1)), std::invalid_argument);
  EXPECT_THROW(build_q(1, 3, Rational(0)), std::invalid_argument);
}

TEST(BuildQ, KEqualsNHasTripleZeroRoot) {
  for (long n = 3; n <= 8; ++n) {
    const auto d = poly_deflate_zero_root(build_q(n, n, Rational(1, n) + Rational(1, 10)));
    EXPECT_EQ(d.m, 3u) << n;
    EXPECT_FALSE(d.q.eval(Rational(0)).is_zero());
    EXPECT_LE(d.q.degree(), 3);
  }
}

TEST(Decomposition, MatchesBuildQAtRandomAlpha) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<long> num(1, 400);
  std::uniform_int_distribution<long> den(1, 97);
  for (long n = 3; n <= 12; ++n)
    for (long k = 1; k <= n; ++k) {
      const QDecomposition d = alpha_decomposition(k, n);
      EXPECT_EQ(d.A, alpha_squared_factored(k, d.inner)) << n << k;
      EXPECT_LE(d.at(Rational(1)).degree(), 6);
      for (int i = 0; i < 20; ++i) {
        const Rational a(num(rng), den(rng));
        ASSERT_EQ(d.at(a), build_q(k, n, a)) << "n=" << n << " k=" << k << " alpha=" << a;
      }
    }
}

TEST(C0Bisect, MatchesReferenceTable) {
  for (const auto& row : kReferenceTable) {
    const BoundsResult r = c0_bisect(row.n, row.k);
    EXPECT_EQ(r.c0_lo, row.c0_lo) << row.n << "," << row.k;
  }
}

TEST(C0Bisect, WithinReferenceBrackets) {
  for (long n = 3; n <= 12; ++n) {
    const BoundsResult r = c0_bisect(n, 1);
    const double v = r.c0_lo.to_double();
    EXPECT_NEAR(v, kReferenceK1[static_cast<std::size_t>(n - 3)], 0.01) << n;
  }
  EXPECT_NEAR(c0_bisect(3, 2).c0_lo.to_double(), 1.0, 0.01);
  EXPECT_NEAR(c0_bisect(4, 2).c0_lo.to_double(), 1.0, 0.01);
  const BoundsResult r93 = c0_bisect(9, 3);
  EXPECT_LE((r93.c0_lo - Rational(1, 2)).abs(), Rational(1, 100));
}

TEST(C0Bisect, ResultInvariants) {
  const Rational delta(1, 100);
  for (long n = 3; n <= 9; ++n)
    for (long k = 1; k <= n; ++k) {
      const BoundsResult r = c0_bisect(n, k, delta);
      EXPECT_LT(r.c0_hi - r.c0_lo, delta);
      EXPECT_TRUE(nonpositive_on_positive_axis(build_q(k, n, r.c0_lo)));
      if (!r.hi_is_initial_cap) {
        EXPECT_FALSE(nonpositive_on_positive_axis(build_q(k, n, r.c0_hi)));
      }
      EXPECT_GE(r.c0_lo, Rational(1, k));
      if (k >= 2) {
        EXPECT_LE(r.c0_hi, Rational(1, k - 1) + delta);
      }
      EXPECT_EQ(r.transcript.size(), static_cast<std::size_t>(r.iterations));
      for (const auto& step : r.transcript) EXPECT_EQ(step.accepted, nonpositive_on_positive_axis(build_q(k, n, step.alpha)));
    }
  EXPECT_THROW(c0_bisect(3, 1, Rational(0)), std::invalid_argument);
}

TEST(C2, ClosedFormExamples) {
  const C2Value a = c2_closed_form(3, 1);
  EXPECT_EQ(a.branch, 1);
  EXPECT_EQ(a.value, Surd(Rational(17), Rational(12), BigInt(2)));
  EXPECT_NEAR(a.value.to_double(), 33.9706, 1e-4);
  const C2Value b = c2_closed_form(4, 3);
  EXPECT_EQ(b.branch, 2);
  EXPECT_EQ(b.value, Surd(Rational(1)));
  const C2Value c = c2_closed_form(3, 2);
  EXPECT_EQ(c.value, Surd(Rational(7, 2), Rational(2), BigInt(3)));
}

TEST(C2, AtLeastInverseK) {
  for (long n = 3; n <= 12; ++n)
    for (long k = 1; k <= n; ++k) EXPECT_GE(c2_closed_form(n, k).value, Surd(Rational(1, k))) << n << k;
  for (long k = 3; k <= 8; ++k) {
    const long n = k * (k - 1) + 1;
    const C2Value v = c2_closed_form(n, k);
    EXPECT_EQ(v.branch, 1);
    EXPECT_GT(v.value, Surd(Rational(1, k)));
  }
}

TEST(C1, ActiveBranches) {
  const BoundsResult a = c1_combined(3, 1);
  EXPECT_EQ(a.active, ActiveBound::c0);
  EXPECT_NEAR(a.c1.to_double(), 3.64, 0.01);
  const BoundsResult b = c1_combined(4, 1);
  EXPECT_EQ(b.active, ActiveBound::c0);
  EXPECT_NEAR(b.c1.to_double(), 2.93, 0.01);
  const BoundsResult c = c1_combined(3, 2);
  EXPECT_EQ(c.active, ActiveBound::c0);
  EXPECT_NEAR(c.c1.to_double(), 1.0, 0.01);
}

TEST(ZeroOrderTerms, ExpressionExamples) {
  EXPECT_EQ(claim1_expression<Rational>(3, 1, Rational(1), Rational(1), Rational(1)), Rational(-6));
  const Rational a(3, 2);
  const Rational l(5, 7);
  const Rational sum = claim1_expression<Rational>(5, 2, a, Rational(1), Rational(1));
  EXPECT_EQ(claim1_expression<Rational>(5, 2, a, l, l), sum * l * l);
}

TEST(ZeroOrderTerms, DiscriminantVanishesAtC2) {
  for (long n = 3; n <= 12; ++n)
    for (long k = 1; k <= n; ++k) {
      const C2Value c2 = c2_closed_form(n, k);
      if (c2.branch != 1) continue;
      EXPECT_EQ(claim1_discriminant<Surd>(n, k, c2.value).sign(), 0) << n << k;
    }
}

TEST(ZeroOrderTerms, GridCheckPasses) {
  EXPECT_TRUE(claim1_zero_order_check(3, 1, Rational(1)).passed());
  EXPECT_TRUE(claim1_zero_order_check(6, 3, Rational(1, 2), 30).passed());
  EXPECT_THROW(claim1_zero_order_check(3, 1, Rational(1, 2)), std::invalid_argument);
  EXPECT_THROW(claim1_zero_order_check(3, 1, Rational(40)), std::invalid_argument);
}

TEST(CoefficientSigns, CoefficientExamples) {
  EXPECT_EQ(build_q(2, 3, Rational(1)).coeff(3), Rational(-6));
  EXPECT_EQ(build_q(3, 9, Rational(1, 2)).coeff(4), Rational(-135, 2));
  EXPECT_EQ(build_q(2, 4, Rational(1)).coeff(5), Rational(0));
}

TEST(CoefficientSigns, VerifiedToK12) {
  const Report r = verify_prop_a1(12);
  EXPECT_TRUE(r.passed()) << r;
}

TEST(FamilyBoundK1, SmallestSweepValue) {
  EXPECT_EQ(count_roots_in(build_q(1, 13, Rational(20, 13)), RightRay::positive_axis()), 0);
  EXPECT_TRUE(nonpositive_on_positive_axis(build_q(1, 12, Rational(19, 12))));
  EXPECT_TRUE(certify_no_roots_above(AppendixFixtures::get().Z[0], Rational(12)));
}

TEST(FamilyBoundK1, VerifiedToN1000) {
  PropA3Options opt;
  opt.n_sweep_max = 1000;
  const Report r = verify_prop_a3(opt);
  EXPECT_TRUE(r.passed()) << r;
}

TEST(GeneralKBound, FactoredCoefficientExamples) {
  const Poly n = Poly::x();
  EXPECT_EQ(a_coefficient(5, 2), (n - Poly::constant(4)) * (n - Poly::constant(44)) * Rational(-2));
  EXPECT_EQ(a_coefficient(5, 3), (n - Poly::constant(9)) * (n * Rational(5) - Poly::constant(72)) * Rational(-6));
  EXPECT_EQ(a_coefficient(0, 2).eval(Rational(5)), Rational(-1890));
  EXPECT_THROW(a_coefficient(7, 2), std::out_of_range);
  EXPECT_THROW(a_coefficient(0, 1), std::invalid_argument);
}

TEST(GeneralKBound, IdentityAgainstBuildQ) {
  for (long k = 2; k <= 8; ++k)
    for (long n = std::max(k, 3L); n <= k + 40; n += 3) {
      const Poly scaled = build_q(k, n, prop_a4_alpha(k, n)) * Rational(n * n * (k - 1) * (k - 1));
      for (int i = 0; i <= 6; ++i) ASSERT_EQ(scaled.coeff(static_cast<std::size_t>(i)), a_coefficient(i, k).eval(Rational(n)));
    }
}

TEST(GeneralKBound, VerifiedToK8) {
  const Report r = verify_prop_a4(8);
  EXPECT_TRUE(r.passed()) << r;
}

TEST(Sandwich, Examples) {
  const BoundsResult r93 = c0_bisect(9, 3);
  EXPECT_LE((r93.c0_lo - Rational(1, 2)).abs(), Rational(1, 100));
  const BoundsResult r51 = c0_bisect(5, 1);
  EXPECT_GE(r51.c0_lo, Rational(1));
  EXPECT_LE(r51.c0_hi, Rational(6));
  EXPECT_NEAR(r51.c0_lo.to_double(), 2.56, 0.01);
  const BoundsResult r121 = c0_bisect(12, 1);
  EXPECT_GE(r121.c0_lo, Rational(19, 12));
  EXPECT_NEAR(r121.c0_lo.to_double(), 1.78, 0.01);
}

TEST(Sandwich, VerifiedToN12) {
  const Report r = verify_alpha_sandwich(12, 12);
  EXPECT_TRUE(r.passed()) << r;
}
