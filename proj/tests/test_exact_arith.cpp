#include "pinchlab/polynomial.hpp"
#include "pinchlab/ratfunc.hpp"
#include "pinchlab/rational.hpp"
#include "pinchlab/sturm.hpp"
#include "pinchlab/surd.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace pinchlab;

namespace {

Poly random_poly(std::mt19937_64& rng, int max_degree, int range) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> coef(-range, range);
  std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& v : c) v = Rational(coef(rng));
  return Poly(c);
}

}  // namespace

TEST(Rational, LowestTermsAndPositiveDenominator) {
  Rational r(BigInt(6), BigInt(-4));
  EXPECT_EQ(r.num(), BigInt(-3));
  EXPECT_EQ(r.den(), BigInt(2));
  Rational z(BigInt(0), BigInt(-7));
  EXPECT_EQ(z.num(), BigInt(0));
  EXPECT_EQ(z.den(), BigInt(1));
  EXPECT_THROW(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST(Rational, ParseFractionsAndDecimals) {
  EXPECT_EQ(Rational::parse("1/100"), Rational(1, 100));
  EXPECT_EQ(Rational::parse("0.01"), Rational(1, 100));
  EXPECT_EQ(Rational::parse("-0.01"), Rational(-1, 100));
  EXPECT_EQ(Rational::parse("1e-3"), Rational(1, 1000));
  EXPECT_EQ(Rational::parse("2.5E2"), Rational(250));
  EXPECT_EQ(Rational::parse("-12/8"), Rational(-3, 2));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(Rational, ParseLeadingZerosAreDecimal) {
  EXPECT_EQ(Rational::parse("0.3334"), Rational(1667, 5000));
  EXPECT_EQ(Rational::parse("017"), Rational(17));
  EXPECT_EQ(Rational::parse("0.0778"), Rational(389, 5000));
  EXPECT_EQ(Rational::parse("08/09"), Rational(8, 9));
}

TEST(Rational, FromDoubleIsExact) {
  EXPECT_EQ(Rational::from_double(0.5), Rational(1, 2));
  EXPECT_EQ(Rational::from_double(0.1).to_double(), 0.1);
}

TEST(Rational, AdditionRoundTripIsExact) {
  std::mt19937_64 rng(20260101);
  std::uniform_int_distribution<long> num(-1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 1000000);
  for (int i = 0; i < 10000; ++i) {
    const Rational a(num(rng), den(rng));
    const Rational c(num(rng), den(rng));
    ASSERT_EQ((a + c) - c, a);
  }
}

TEST(Polynomial, ZeroIsCanonical) {
  Poly z{Rational(0), Rational(0)};
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.degree(), -1);
  EXPECT_EQ(z.size(), 0u);
}

TEST(Polynomial, RemainderExamples) {
  const Poly x = Poly::x();
  const Poly one = Poly::constant(1);
  EXPECT_TRUE(poly_rem(x * x * x - one, x - one).is_zero());
  EXPECT_TRUE(poly_rem(x * x, x).is_zero());
  EXPECT_EQ(poly_rem(x * x + one, x - one), Poly::constant(2));
  EXPECT_THROW(poly_rem(x, Poly{}), std::domain_error);
}

TEST(Polynomial, DerivativeExamples) {
  const Poly x = Poly::x();
  EXPECT_EQ(poly_derivative(x * x), x * Rational(2));
  EXPECT_TRUE(poly_derivative(Poly::constant(7)).is_zero());
  EXPECT_EQ(poly_derivative(poly_from_ints({-16, 0, -24, 0, -12, 0, -2})), poly_from_ints({0, -48, 0, -48, 0, -12}));
}

TEST(Polynomial, DivisionReconstructs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Poly p = random_poly(rng, 8, 9);
    Poly q = random_poly(rng, 8, 9);
    if (q.is_zero()) continue;
    const auto dm = poly_divmod(p, q);
    ASSERT_LT(dm.remainder.degree(), q.degree());
    ASSERT_EQ(dm.quotient * q + dm.remainder, p);
  }
}

TEST(Polynomial, DeflateZeroRoot) {
  const auto d = poly_deflate_zero_root(poly_from_ints({0, 0, 1, 1}));
  EXPECT_EQ(d.m, 2u);
  EXPECT_EQ(d.q, poly_from_ints({1, 1}));
  const auto c = poly_deflate_zero_root(Poly::constant(5));
  EXPECT_EQ(c.m, 0u);
  EXPECT_EQ(c.q, Poly::constant(5));
  EXPECT_THROW(poly_deflate_zero_root(Poly{}), std::domain_error);
}

TEST(Polynomial, ParseFromStrings) {
  EXPECT_EQ(poly_from_strings({"-1", "0", "1"}), poly_from_ints({-1, 0, 1}));
  EXPECT_EQ(poly_from_strings({"1/2", "0.25"}), Poly({Rational(1, 2), Rational(1, 4)}));
}

TEST(Polynomial, SignAtPoints) {
  EXPECT_EQ(sign_at(poly_from_ints({-1, 0, 1}), Point::infinity()), 1);
  EXPECT_EQ(sign_at(poly_from_ints({0, 0, 0, 1}), Point::zero_plus()), 1);
  EXPECT_EQ(sign_at(poly_from_ints({-16, 0, -24, 0, -12, 0, -2}), Point::zero_plus()), -1);
  EXPECT_EQ(sign_at(Poly{}, Point::zero_plus()), 0);
  EXPECT_EQ(sign_at(poly_from_ints({-1, 0, 1}), Point::at(Rational(1))), 0);
  EXPECT_EQ(sign_at(poly_from_ints({-1, 0, 1}), Point::at(Rational(1, 2))), -1);
}

TEST(Polynomial, ZeroPlusMatchesTinyEvaluation) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const Poly p = random_poly(rng, 7, 20);
    if (p.is_zero()) continue;
    const Poly q = poly_deflate_zero_root(p).q;
    // Cauchy bound on the reciprocal polynomial: nonzero roots of q have |x| >= |q0| / (|q0| + max|q_i|).
    Rational m(0);
    for (const auto& c : q.coefficients()) m = std::max(m, c.abs());
    const Rational q0 = q.coeff(0).abs();
    const Rational bound = q0 / (q0 + m);
    Rational a(1);
    while (a >= bound) a /= Rational(2);
    const int s = p.eval(a).sign();
    ASSERT_EQ(sign_at(p, Point::zero_plus()), s) << p;
  }
}

TEST(RatFunc, NormalizedForm) {
  const RatFunc n = RatFunc::variable();
  const RatFunc r = (n * n - RatFunc(1)) / (RatFunc(-2) * (n - RatFunc(1)));
  EXPECT_EQ(r, (n + RatFunc(1)) / RatFunc(-2));
  EXPECT_GT(r.den().lead().sign(), 0);
  EXPECT_EQ(r.eval(Rational(3)), Rational(-2));
}

TEST(Surd, FoldsPerfectSquares) {
  const Surd s(Rational(1), Rational(3), BigInt(12));
  EXPECT_EQ(s.radicand(), BigInt(3));
  EXPECT_EQ(s.surd_coefficient(), Rational(6));
  const Surd t(Rational(1), Rational(2), BigInt(9));
  EXPECT_TRUE(t.is_rational());
  EXPECT_EQ(t.rational_part(), Rational(7));
}

TEST(Surd, ArithmeticClosed) {
  const Surd a(Rational(1), Rational(1), BigInt(2));
  const Surd b(Rational(1), Rational(-1), BigInt(2));
  EXPECT_EQ(a * b, Surd(Rational(-1)));
  EXPECT_EQ(a + b, Surd(Rational(2)));
  EXPECT_EQ((a * a).sign(), 1);
}

TEST(Surd, SignMatchesLongDouble) {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<long> num(-100000, 100000);
  std::uniform_int_distribution<long> den(1, 1000);
  std::uniform_int_distribution<long> rad(2, 10000);
  int tested = 0;
  while (tested < 1000) {
    const Surd s(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)), BigInt(rad(rng)));
    const long double v = s.to_long_double();
    if (std::fabs(v) <= 1e-12L) continue;
    ++tested;
    ASSERT_EQ(s.sign(), v > 0 ? 1 : -1);
  }
}

TEST(Surd, ExactZeroDetected) {
  const Surd s(Rational(-4), Rational(2), BigInt(4));  // -4 + 2*2
  EXPECT_EQ(s.sign(), 0);
  const Surd t(Rational(-7), Rational(5), BigInt(2));
  EXPECT_EQ(t.sign(), 1);  // 5 sqrt 2 ~ 7.07
}
