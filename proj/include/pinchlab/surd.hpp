#pragma once

#include "pinchlab/rational.hpp"

#include <cmath>
#include <compare>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pinchlab {

/// a + b * sqrt(r) with r a square-free nonnegative integer.
///
/// A value whose irrational part vanishes is stored with b = 0 and r = 0, so
/// rationals have a unique representation. Binary operations between two
/// irrational values require the same radicand.
class Surd {
 public:
  Surd() = default;
  Surd(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Surd(int a) : a_(a) {}              // NOLINT(google-explicit-constructor)
  Surd(const Rational& a, const Rational& b, const BigInt& radicand) : a_(a), b_(b), r_(radicand) {
    if (r_ < 0) throw std::domain_error("Surd: negative radicand");
    canonicalize();
  }

  /// sqrt(m) for a nonnegative integer m, with square factors pulled out.
  static Surd sqrt_of(const BigInt& m) { return Surd(Rational(0), Rational(1), m); }

  [[nodiscard]] const Rational& rational_part() const { return a_; }
  [[nodiscard]] const Rational& surd_coefficient() const { return b_; }
  [[nodiscard]] const BigInt& radicand() const { return r_; }
  [[nodiscard]] bool is_rational() const { return b_.is_zero(); }

  /// Exact sign of a + b sqrt(r).
  [[nodiscard]] int sign() const {
    const int sa = a_.sign();
    const int sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Opposite signs: compare a^2 with b^2 r.
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * Rational(r_);
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
  }

  [[nodiscard]] long double to_long_double() const {
    return a_.to_long_double() + b_.to_long_double() * std::sqrt(Rational(r_).to_long_double());
  }
  [[nodiscard]] double to_double() const { return static_cast<double>(to_long_double()); }

  friend Surd operator+(const Surd& x, const Surd& y) {
    BigInt r = common_radicand(x, y);
    return Surd(x.a_ + y.a_, x.b_ + y.b_, r);
  }
  friend Surd operator-(const Surd& x) { return Surd(-x.a_, -x.b_, x.r_); }
  friend Surd operator-(const Surd& x, const Surd& y) { return x + (-y); }
  friend Surd operator*(const Surd& x, const Surd& y) {
    BigInt r = common_radicand(x, y);
    Rational rr(r);
    return Surd(x.a_ * y.a_ + x.b_ * y.b_ * rr, x.a_ * y.b_ + x.b_ * y.a_, r);
  }
  friend Surd operator/(const Surd& x, const Rational& d) {
    if (d.is_zero()) throw std::domain_error("Surd: division by zero");
    return Surd(x.a_ / d, x.b_ / d, x.r_);
  }

  friend bool operator==(const Surd& x, const Surd& y) { return (x - y).sign() == 0; }
  friend std::strong_ordering operator<=>(const Surd& x, const Surd& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Surd& s) {
    if (s.is_rational()) return os << s.a_;
    if (!s.a_.is_zero()) os << s.a_ << (s.b_.sign() > 0 ? " + " : " - ");
    else if (s.b_.sign() < 0) os << '-';
    Rational b = s.b_.abs();
    if (b != Rational(1)) os << b << '*';
    return os << "sqrt(" << s.r_.get_str() << ')';
  }

 private:
  static BigInt common_radicand(const Surd& x, const Surd& y) {
    if (x.is_rational()) return y.r_;
    if (y.is_rational() || x.r_ == y.r_) return x.r_;
    throw std::domain_error("Surd: mixed radicands are not supported");
  }

  void canonicalize() {
    if (b_.is_zero() || r_ == 0) {
      b_ = Rational(0);
      r_ = 0;
      return;
    }
    // Pull square factors out of r.
    BigInt rest = r_;
    BigInt outside = 1;
    for (BigInt p = 2; p * p <= rest; ++p) {
      BigInt sq = p * p;
      while (mpz_divisible_p(rest.get_mpz_t(), sq.get_mpz_t()) != 0) {
        rest /= sq;
        outside *= p;
      }
    }
    b_ *= Rational(outside);
    r_ = rest;
    if (r_ == 1) {
      a_ += b_;
      b_ = Rational(0);
      r_ = 0;
    }
  }

  Rational a_;
  Rational b_;
  BigInt r_ = 0;
};

}  // namespace pinchlab
