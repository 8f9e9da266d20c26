#pragma once

#include "pinchlab/polynomial.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace pinchlab {

/// Element of Q(n): numerator / denominator in lowest terms, denominator monic.
class RatFunc {
 public:
  RatFunc() : den_(Poly::constant(Rational(1))) {}
  RatFunc(int v) : RatFunc(Rational(v)) {}                       // NOLINT
  RatFunc(long v) : RatFunc(Rational(v)) {}                      // NOLINT
  RatFunc(const Rational& v) : num_(Poly::constant(v)), den_(Poly::constant(Rational(1))) {}  // NOLINT
  RatFunc(Poly num) : num_(std::move(num)), den_(Poly::constant(Rational(1))) {}  // NOLINT
  RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    normalize();
  }

  /// The parameter n itself.
  static RatFunc variable() { return RatFunc(Poly::x()); }

  [[nodiscard]] const Poly& num() const { return num_; }
  [[nodiscard]] const Poly& den() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_polynomial() const { return den_.degree() == 0; }

  [[nodiscard]] Rational eval(const Rational& at) const {
    Rational d = den_.eval(at);
    if (d.is_zero()) throw std::domain_error("RatFunc: pole at evaluation point");
    return num_.eval(at) / d;
  }

  /// Sign as n -> +infinity.
  [[nodiscard]] int sign_at_infinity() const { return num_.is_zero() ? 0 : num_.lead().sign(); }

  RatFunc inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    return RatFunc(den_, num_);
  }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (a.den_ == b.den_) return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a) {
    RatFunc r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc();
    if (a.is_polynomial() && b.is_polynomial()) {
      RatFunc r;
      r.num_ = a.num_ * b.num_;
      return r;
    }
    // Cross-cancel before multiplying to keep degrees down.
    Poly g1 = poly_gcd(a.num_, b.den_);
    Poly g2 = poly_gcd(b.num_, a.den_);
    RatFunc r;
    r.num_ = poly_exact_div(a.num_, g1) * poly_exact_div(b.num_, g2);
    r.den_ = poly_exact_div(a.den_, g2) * poly_exact_div(b.den_, g1);
    r.make_den_monic();
    return r;
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::ostream& operator<<(std::ostream& os, const RatFunc& r) {
    if (r.is_polynomial()) return os << to_string(r.num_ * r.den_.lead().inverse(), "n");
    return os << '(' << to_string(r.num_, "n") << ")/(" << to_string(r.den_, "n") << ')';
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly::constant(Rational(1));
      return;
    }
    if (den_.degree() > 0) {
      Poly g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = poly_exact_div(num_, g);
        den_ = poly_exact_div(den_, g);
      }
    }
    make_den_monic();
  }
  void make_den_monic() {
    Rational l = den_.lead();
    if (l != Rational(1)) {
      num_ /= l;
      den_ /= l;
    }
  }

  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFunc& r) { return r.is_zero(); }

using ParamPoly = Polynomial<RatFunc>;

/// Specializes every coefficient at n = at.
inline Poly specialize(const ParamPoly& p, const Rational& at) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& r : p.coefficients()) c.push_back(r.eval(at));
  return Poly(std::move(c));
}

}  // namespace pinchlab
