#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdlib>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pinchlab {

using BigInt = mpz_class;

/// Exact fraction in lowest terms with a strictly positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}                       // NOLINT(google-explicit-constructor)
  Rational(long v) : q_(v) {}                      // NOLINT(google-explicit-constructor)
  Rational(long long v) : q_(BigInt(std::to_string(v))) {}  // NOLINT
  Rational(const BigInt& v) : q_(v) {}             // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Exact binary value of a finite double.
  static Rational from_double(double d) {
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), d);
    return Rational(q);
  }

  /// Parses "p", "p/q", or a plain decimal such as "-0.01" or "1e-3" exactly.
  static Rational parse(std::string_view text) {
    std::string s(text);
    auto fail = [&] { throw std::invalid_argument("malformed rational: '" + s + "'"); };
    if (s.empty()) fail();
    auto parse_int = [&](const std::string& t) {
      if (t.empty() || t == "-" || t == "+") fail();
      std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
      for (std::size_t j = i; j < t.size(); ++j)
        if (t[j] < '0' || t[j] > '9') fail();
      return BigInt(t[0] == '+' ? t.substr(1) : t, 10);
    };
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt den = parse_int(s.substr(slash + 1));
      if (den == 0) fail();
      return Rational(parse_int(s.substr(0, slash)), den);
    }
    long exp10 = 0;
    std::string mant = s;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      exp10 = parse_int(s.substr(e + 1)).get_si();
      mant = s.substr(0, e);
    }
    if (auto dot = mant.find('.'); dot != std::string::npos) {
      std::string frac = mant.substr(dot + 1);
      exp10 -= static_cast<long>(frac.size());
      mant = mant.substr(0, dot) + frac;
      if (mant == "-" || mant == "+" || mant.empty()) fail();
    }
    Rational value(parse_int(mant));
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    return exp10 < 0 ? value / Rational(scale) : value * Rational(scale);
  }

  [[nodiscard]] BigInt num() const { return q_.get_num(); }
  [[nodiscard]] BigInt den() const { return q_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] double to_double() const { return q_.get_d(); }
  [[nodiscard]] long double to_long_double() const {
    mpf_class f(q_, 160);
    char buf[96];
    gmp_snprintf(buf, sizeof buf, "%.40Fe", f.get_mpf_t());
    return std::strtold(buf, nullptr);
  }
  [[nodiscard]] std::string str() const { return q_.get_str(); }
  [[nodiscard]] const mpq_class& raw() const { return q_; }

  Rational abs() const { return Rational(::abs(q_)); }
  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(q_.get_den(), q_.get_num()));
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_{0};
};

inline bool is_zero(const Rational& r) { return r.is_zero(); }

inline Rational pow(const Rational& base, unsigned e) {
  Rational r(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace pinchlab
