#pragma once

#include "pinchlab/polynomial.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinchlab {

/// Where a sign is read: just right of 0, at +infinity, or at a finite rational.
struct Point {
  enum class Kind { zero_plus, pos_infinity, finite };
  Kind kind = Kind::finite;
  Rational value;

  static Point zero_plus() { return {Kind::zero_plus, Rational(0)}; }
  static Point infinity() { return {Kind::pos_infinity, Rational(0)}; }
  static Point at(const Rational& a) { return {Kind::finite, a}; }

  [[nodiscard]] std::string str() const {
    switch (kind) {
      case Kind::zero_plus: return "0+";
      case Kind::pos_infinity: return "+inf";
      default: return value.str();
    }
  }
};

/// Open interval (left, +infinity); left is 0 (read as 0+) or a finite rational.
struct RightRay {
  Rational left;
  static RightRay positive_axis() { return {Rational(0)}; }
  static RightRay above(const Rational& a) { return {a}; }
};

inline int sign_at(const Poly& p, const Point& at) {
  if (p.is_zero()) return 0;
  switch (at.kind) {
    case Point::Kind::pos_infinity: return p.lead().sign();
    case Point::Kind::zero_plus:
      for (const auto& c : p.coefficients())
        if (!c.is_zero()) return c.sign();
      return 0;
    case Point::Kind::finite: break;
  }
  return p.eval(at.value).sign();
}

/// Standard Sturm sequence p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i) / s_{i+1}.
///
/// Remainders are divided by their positive content s_{i+1} so coefficients
/// stay integral and small; p0 and p1 are stored unscaled (s = 1).
struct SturmSeq {
  std::vector<Poly> polys;
  std::vector<Rational> scales;  // parallel to polys; all > 0

  [[nodiscard]] std::size_t size() const { return polys.size(); }
  [[nodiscard]] std::vector<int> signs(const Point& at) const {
    std::vector<int> out;
    out.reserve(polys.size());
    for (const auto& p : polys) out.push_back(sign_at(p, at));
    return out;
  }
};

inline SturmSeq build_sturm(const Poly& p) {
  if (p.degree() < 1) throw std::invalid_argument("build_sturm: polynomial must have positive degree");
  SturmSeq s;
  s.polys = {p, poly_derivative(p)};
  s.scales = {Rational(1), Rational(1)};
  for (;;) {
    Poly r = -poly_rem(s.polys[s.polys.size() - 2], s.polys.back());
    if (r.is_zero()) break;
    Rational c = content(r);
    s.polys.push_back(r / c);
    s.scales.push_back(c);
  }
  return s;
}

/// Strict sign alternations, zeros skipped.
inline int count_sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline int sign_changes(const SturmSeq& seq, const Point& at) { return count_sign_changes(seq.signs(at)); }

/// Number of distinct real roots of p in (interval.left, +infinity).
///
/// A left endpoint of 0 is read as 0+ after deflating x^m; a finite nonzero
/// endpoint must not be a root.
inline int count_roots_in(const Poly& p, const RightRay& interval) {
  if (p.is_zero()) throw std::invalid_argument("count_roots_in: zero polynomial");
  if (interval.left.is_zero()) {
    Poly q = poly_deflate_zero_root(p).q;
    if (q.degree() < 1) return 0;
    SturmSeq s = build_sturm(q);
    return sign_changes(s, Point::zero_plus()) - sign_changes(s, Point::infinity());
  }
  if (p.eval(interval.left).is_zero())
    throw std::domain_error("count_roots_in: endpoint " + interval.left.str() + " is a root");
  if (p.degree() < 1) return 0;
  SturmSeq s = build_sturm(p);
  return sign_changes(s, Point::at(interval.left)) - sign_changes(s, Point::infinity());
}

/// True iff p(x) <= 0 for every x > 0, decided exactly.
inline bool nonpositive_on_positive_axis(const Poly& p) {
  if (p.is_zero()) return true;
  Poly q = poly_deflate_zero_root(p).q;
  if (sign_at(q, Point::zero_plus()) >= 0) return false;
  return count_roots_in(q, RightRay::positive_axis()) == 0;
}

/// True iff p has no real root in (a, +infinity); requires p(a) != 0.
inline bool certify_no_roots_above(const Poly& p, const Rational& a) {
  if (p.is_zero()) throw std::invalid_argument("certify_no_roots_above: zero polynomial");
  if (p.eval(a).is_zero()) throw std::domain_error("certify_no_roots_above: p(a) = 0");
  return count_roots_in(p, RightRay::above(a)) == 0;
}

}  // namespace pinchlab
