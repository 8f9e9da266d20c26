#include "pinchlab/appendix_fixtures.hpp"
#include "pinchlab/param_sturm.hpp"
#include "pinchlab/pinching.hpp"
#include "pinchlab/sturm.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace pinchlab;

namespace {

/// A polynomial assembled from factors whose real roots are known in advance.
struct Factored {
  Poly p;
  int positive_roots = 0;
};

Factored random_factored(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(1, 6);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> small(-6, 6);
  std::uniform_int_distribution<int> denom(1, 4);
  std::uniform_int_distribution<int> radicand(2, 30);
  const int target = deg(rng);
  Poly p = Poly::constant(Rational(small(rng) >= 0 ? 3 : -2, denom(rng)));
  std::set<Rational> rational_roots;
  std::set<int> sqrt_roots;
  int d = 0;
  while (d < target) {
    const int choice = target - d >= 2 ? kind(rng) : 0;
    if (choice <= 1) {
      const Rational r(small(rng), denom(rng));
      p = p * Poly{-r, Rational(1)};
      if (r.sign() > 0) rational_roots.insert(r);
      d += 1;
    } else if (choice == 2) {
      // x^2 + b x + c with b^2 < 4c has no real roots.
      const Rational b(small(rng), denom(rng));
      const Rational c = b * b / Rational(4) + Rational(1, denom(rng));
      p = p * Poly{c, b, Rational(1)};
      d += 2;
    } else {
      int m = radicand(rng);
      const int root = static_cast<int>(std::lround(std::sqrt(m)));
      if (root * root == m) ++m;
      p = p * Poly{Rational(-m), Rational(0), Rational(1)};
      sqrt_roots.insert(m);
      d += 2;
    }
  }
  return {p, static_cast<int>(rational_roots.size() + sqrt_roots.size())};
}

int dense_scan_sign_changes(const Poly& p, int steps, const Rational& step) {
  int changes = 0;
  int last = 0;
  for (int j = 1; j <= steps; ++j) {
    const int s = p.eval(step * Rational(j)).sign();
    if (s != 0 && last != 0 && s != last) ++changes;
    if (s != 0) last = s;
  }
  return changes;
}

}  // namespace

TEST(Sturm, BuildExamples) {
  const SturmSeq s = build_sturm(poly_from_ints({-1, 0, 1}));
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.polys[1], poly_from_ints({0, 2}));
  EXPECT_EQ(s.polys[2], Poly::constant(1));
  const SturmSeq t = build_sturm(poly_from_ints({0, 0, 1}));
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.polys[1], poly_from_ints({0, 2}));
  EXPECT_THROW(build_sturm(Poly::constant(3)), std::invalid_argument);
}

TEST(Sturm, SignChangeExamples) {
  const SturmSeq s = build_sturm(poly_from_ints({-1, 0, 1}));
  EXPECT_EQ(sign_changes(s, Point::zero_plus()), 1);
  EXPECT_EQ(sign_changes(s, Point::infinity()), 0);
  EXPECT_EQ(count_sign_changes({1, 0, -1, 0, 0, -1, 1}), 2);
}

TEST(Sturm, I2SequenceAndSignTables) {
  const auto& f = AppendixFixtures::get();
  const SturmSeq s = build_sturm(f.I[2]);
  ASSERT_EQ(s.size(), f.q.size());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_TRUE(positively_proportional(f.q[i], s.polys[i])) << i;
  const std::vector<int> at12(kQSignsAt12.begin(), kQSignsAt12.end());
  const std::vector<int> atinf(kQSignsAtInfinity.begin(), kQSignsAtInfinity.end());
  EXPECT_EQ(s.signs(Point::at(Rational(12))), at12);
  EXPECT_EQ(s.signs(Point::infinity()), atinf);
  EXPECT_EQ(sign_changes(s, Point::at(Rational(12))), 1);
  EXPECT_EQ(sign_changes(s, Point::infinity()), 1);
}

TEST(Sturm, CountRootsExamples) {
  EXPECT_EQ(count_roots_in(poly_from_ints({-1, 0, 1}), RightRay::positive_axis()), 1);
  EXPECT_EQ(count_roots_in(AppendixFixtures::get().I[2], RightRay::above(Rational(12))), 0);
  EXPECT_THROW(count_roots_in(poly_from_ints({-1, 0, 1}), RightRay::above(Rational(1))), std::domain_error);
  EXPECT_EQ(count_roots_in(poly_from_ints({0, 0, 1}), RightRay::positive_axis()), 0);
}

TEST(Sturm, QBelowC0HasNoPositiveRootByDenseScan) {
  const Poly q = build_q(1, 3, Rational(7, 2));
  EXPECT_EQ(count_roots_in(q, RightRay::positive_axis()), 0);
  EXPECT_EQ(dense_scan_sign_changes(q, 10000, Rational(1, 100)), 0);
  EXPECT_TRUE(nonpositive_on_positive_axis(q));
}

TEST(Sturm, NonpositiveExamples) {
  EXPECT_TRUE(nonpositive_on_positive_axis(build_q(1, 3, Rational(1))));
  const Poly above = build_q(1, 3, Rational(4));
  EXPECT_GT(dense_scan_sign_changes(above, 10000, Rational(1, 100)), 0);
  EXPECT_FALSE(nonpositive_on_positive_axis(above));
  EXPECT_FALSE(nonpositive_on_positive_axis(poly_from_ints({1, -2, 1})));
  EXPECT_TRUE(nonpositive_on_positive_axis(Poly{}));
  EXPECT_TRUE(nonpositive_on_positive_axis(poly_from_ints({0, 0, -1})));
}

TEST(Sturm, CertifyNoRootsAbove) {
  EXPECT_TRUE(certify_no_roots_above(AppendixFixtures::get().I[2], Rational(12)));
  EXPECT_FALSE(certify_no_roots_above(poly_from_ints({-13, 1}), Rational(12)));
  EXPECT_THROW(certify_no_roots_above(poly_from_ints({-12, 1}), Rational(12)), std::domain_error);
  const auto& f = AppendixFixtures::get();
  for (std::size_t i = 0; i < f.Z.size(); ++i) {
    EXPECT_TRUE(certify_no_roots_above(f.Z[i], Rational(12))) << "Z" << i;
    EXPECT_TRUE(certify_no_roots_above(f.I[i], Rational(12))) << "I" << i;
  }
}

TEST(Sturm, OracleEquivalenceOnFactoredPolynomials) {
  std::mt19937_64 rng(314159);
  for (int i = 0; i < 1000; ++i) {
    const Factored f = random_factored(rng);
    ASSERT_EQ(count_roots_in(f.p, RightRay::positive_axis()), f.positive_roots) << f.p;
  }
}

TEST(Sturm, IntervalAdditivity) {
  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> num(1, 80);
  std::uniform_int_distribution<int> den(1, 9);
  int tested = 0;
  while (tested < 500) {
    const Factored f = random_factored(rng);
    const Rational a(num(rng), den(rng));
    const Poly q = poly_deflate_zero_root(f.p).q;
    if (q.degree() < 1 || q.eval(a).is_zero()) continue;
    ++tested;
    const SturmSeq s = build_sturm(q);
    const int left = sign_changes(s, Point::zero_plus()) - sign_changes(s, Point::at(a));
    const int right = count_roots_in(f.p, RightRay::above(a));
    ASSERT_EQ(count_roots_in(f.p, RightRay::positive_axis()), left + right) << f.p << " at " << a;
  }
}

TEST(Sturm, SequenceIdentityWithRecordedScales) {
  std::mt19937_64 rng(161803);
  for (int i = 0; i < 300; ++i) {
    const Factored f = random_factored(rng);
    if (f.p.degree() < 1) continue;
    const SturmSeq s = build_sturm(f.p);
    ASSERT_EQ(s.scales.size(), s.polys.size());
    for (std::size_t j = 1; j + 1 < s.size(); ++j) {
      ASSERT_GT(s.scales[j + 1].sign(), 0);
      const Poly combo = s.polys[j - 1] + s.polys[j + 1] * s.scales[j + 1];
      ASSERT_TRUE(poly_rem(combo, s.polys[j]).is_zero()) << f.p << " index " << j;
    }
    ASSERT_TRUE(poly_rem(s.polys[s.size() - 2], s.polys.back()).is_zero());
  }
}
