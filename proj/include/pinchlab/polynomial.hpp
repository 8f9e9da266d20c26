#pragma once

#include "pinchlab/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pinchlab {

namespace detail {
template <class F>
bool coeff_is_zero(const F& v) {
  return is_zero(v);
}
}  // namespace detail

/// Dense univariate polynomial over a field F; coefficient i multiplies x^i.
///
/// The coefficient vector never ends in a zero, so the canonical zero
/// polynomial is the empty vector and degree() == size() - 1.
/// F must provide +, -, *, / and a free `is_zero(const F&)`.
template <class F>
class Polynomial {
 public:
  using coefficient_type = F;

  Polynomial() = default;
  Polynomial(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }  // NOLINT
  Polynomial(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const F& v) { return Polynomial(std::vector<F>{v}); }
  /// c * x^m
  static Polynomial monomial(const F& c, std::size_t m) {
    std::vector<F> v(m + 1, F(0));
    v[m] = c;
    return Polynomial(std::move(v));
  }
  /// The identity polynomial x.
  static Polynomial x() { return monomial(F(1), 1); }

  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] std::size_t size() const { return c_.size(); }
  [[nodiscard]] const std::vector<F>& coefficients() const { return c_; }
  [[nodiscard]] F coeff(std::size_t i) const { return i < c_.size() ? c_[i] : F(0); }
  [[nodiscard]] const F& lead() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
  }

  template <class X>
  [[nodiscard]] X operator()(const X& at) const {
    X acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * at + X(*it);
    return acc;
  }
  [[nodiscard]] F eval(const F& at) const { return (*this)(at); }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const F& s) {
    for (auto& c : c_) c = c * s;
    trim();
    return *this;
  }
  Polynomial& operator/=(const F& s) {
    for (auto& c : c_) c = c / s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& c : a.c_) c = -c;
    return a;
  }
  friend Polynomial operator*(Polynomial a, const F& s) { return a *= s; }
  friend Polynomial operator*(const F& s, Polynomial a) { return a *= s; }
  friend Polynomial operator/(Polynomial a, const F& s) { return a /= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<F> r(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::coeff_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Multiplies by x^m.
  [[nodiscard]] Polynomial shifted(std::size_t m) const {
    if (is_zero()) return {};
    std::vector<F> v(m, F(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return Polynomial(std::move(v));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::coeff_is_zero(c_.back())) c_.pop_back();
  }

  std::vector<F> c_;
};

using Poly = Polynomial<Rational>;

template <class F>
struct DivMod {
  Polynomial<F> quotient;
  Polynomial<F> remainder;
};

/// Long division over the coefficient field: p = quotient * q + remainder, deg remainder < deg q.
template <class F>
DivMod<F> poly_divmod(const Polynomial<F>& p, const Polynomial<F>& q) {
  if (q.is_zero()) throw std::domain_error("polynomial division by the zero polynomial");
  std::vector<F> rem = p.coefficients();
  const auto& qc = q.coefficients();
  const std::size_t dq = qc.size() - 1;
  if (rem.size() < qc.size()) return {Polynomial<F>{}, p};
  std::vector<F> quot(rem.size() - dq, F(0));
  const F inv_lead = F(1) / qc.back();
  for (std::size_t top = rem.size(); top-- > dq;) {
    if (is_zero(rem[top])) continue;
    F factor = rem[top] * inv_lead;
    const std::size_t shift = top - dq;
    quot[shift] = factor;
    for (std::size_t j = 0; j < dq; ++j) rem[shift + j] = rem[shift + j] - factor * qc[j];
    rem[top] = F(0);
  }
  rem.resize(dq);
  return {Polynomial<F>(std::move(quot)), Polynomial<F>(std::move(rem))};
}

template <class F>
Polynomial<F> poly_rem(const Polynomial<F>& p, const Polynomial<F>& q) {
  return poly_divmod(p, q).remainder;
}

template <class F>
Polynomial<F> poly_derivative(const Polynomial<F>& p) {
  if (p.degree() < 1) return {};
  std::vector<F> d(p.size() - 1, F(0));
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p.coefficients()[i] * F(static_cast<long>(i));
  return Polynomial<F>(std::move(d));
}

/// p = x^m * q with q(0) != 0.
template <class F>
struct Deflated {
  std::size_t m = 0;
  Polynomial<F> q;
};

template <class F>
Deflated<F> poly_deflate_zero_root(const Polynomial<F>& p) {
  if (p.is_zero()) throw std::domain_error("cannot deflate the zero polynomial");
  const auto& c = p.coefficients();
  std::size_t m = 0;
  while (is_zero(c[m])) ++m;
  return {m, Polynomial<F>(std::vector<F>(c.begin() + static_cast<std::ptrdiff_t>(m), c.end()))};
}

// ---------------------------------------------------------------------------
// Rational-specific helpers

/// Positive rational c such that p / c has coprime integer coefficients.
inline Rational content(const Poly& p) {
  if (p.is_zero()) return Rational(1);
  BigInt g = 0;
  BigInt l = 1;
  for (const auto& c : p.coefficients()) {
    if (c.is_zero()) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
  }
  return Rational(g, l);
}

/// p divided by its (positive) content: integer coefficients, gcd 1, same sign pattern.
inline Poly primitive_part(const Poly& p) { return p.is_zero() ? p : p / content(p); }

inline Poly monic(const Poly& p) { return p.is_zero() ? p : p / p.lead(); }

/// Monic gcd over Q, via the primitive remainder sequence to keep coefficients small.
inline Poly poly_gcd(Poly a, Poly b) {
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.is_zero()) {
    Poly r = primitive_part(poly_rem(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Exact division; throws if q does not divide p.
inline Poly poly_exact_div(const Poly& p, const Poly& q) {
  auto dm = poly_divmod(p, q);
  if (!dm.remainder.is_zero()) throw std::logic_error("poly_exact_div: nonzero remainder");
  return dm.quotient;
}

/// Convenience: integer coefficient list, ascending degree.
inline Poly poly_from_ints(std::initializer_list<long long> coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (long long c : coeffs) v.emplace_back(c);
  return Poly(std::move(v));
}

/// Parses ascending-degree rationals given as strings ("3", "-1/2", "0.25").
inline Poly poly_from_strings(const std::vector<std::string>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs) v.push_back(Rational::parse(c));
  return Poly(std::move(v));
}

inline double eval_double(const Poly& p, double at) {
  double acc = 0.0;
  for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it)
    acc = acc * at + it->to_double();
  return acc;
}

inline std::string to_string(const Poly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    Rational a = c.abs();
    os << (c.sign() < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (i == 0 || a != Rational(1)) os << a << (i > 0 ? "*" : "");
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
    first = false;
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

}  // namespace pinchlab
