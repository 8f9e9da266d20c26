#pragma once

#include "pinchlab/ratfunc.hpp"
#include "pinchlab/sturm.hpp"

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pinchlab {

class CertificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// +1 or -1 if p keeps that sign on all of (n0, +infinity), 0 if it changes sign there.
///
/// Factors (n - n0) are positive on the ray and are divided out before counting.
inline int certified_sign_above(Poly p, const Rational& n0) {
  if (p.is_zero()) return 0;
  const Poly shift{-n0, Rational(1)};
  while (p.degree() >= 1 && p.eval(n0).is_zero()) p = poly_exact_div(p, shift);
  if (p.degree() >= 1 && count_roots_in(p, RightRay::above(n0)) != 0) return 0;
  return p.lead().sign();
}

/// True when a / b is positive for every n > n0 at which both are nonzero.
inline bool sign_equivalent_above(const Poly& a, const Poly& b, const Rational& n0) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  Poly g = poly_gcd(a, b);
  int sa = certified_sign_above(poly_exact_div(a, g), n0);
  int sb = certified_sign_above(poly_exact_div(b, g), n0);
  return sa != 0 && sa == sb;
}

/// True when b = c * a for a rational c > 0.
inline bool positively_proportional(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return false;
  if (a.is_zero()) return true;
  Rational c = b.lead() / a.lead();
  return c.sign() > 0 && a * c == b;
}

/// Standard Sturm sequence over Q(n), each element divided by a factor that
/// is certified positive for every n > threshold.
struct ParamSturmSeq {
  Rational threshold;
  std::vector<ParamPoly> polys;      // normalized elements: raw_i / factor_ledger[i]
  std::vector<RatFunc> factor_ledger;
  std::vector<Poly> zero_terms;      // Z_i: primitive part of the x^0 coefficient of polys[i]
  std::vector<Poly> lead_terms;      // I_i: primitive part of the leading coefficient of polys[i]

  [[nodiscard]] std::size_t size() const { return polys.size(); }
  /// Signs of Z_i for n -> +infinity.
  [[nodiscard]] std::vector<int> zero_signs_at_infinity() const { return signs_at_infinity(zero_terms); }
  /// Signs of I_i for n -> +infinity.
  [[nodiscard]] std::vector<int> lead_signs_at_infinity() const { return signs_at_infinity(lead_terms); }
  /// Sign changes at x = 0+ for large n.
  [[nodiscard]] int sigma_zero() const { return count_sign_changes(zero_signs_at_infinity()); }
  /// Sign changes at x = +infinity for large n.
  [[nodiscard]] int sigma_infinity() const { return count_sign_changes(lead_signs_at_infinity()); }

  /// Element-wise specialization at a concrete n.
  [[nodiscard]] std::vector<Poly> specialize_at(const Rational& n) const {
    std::vector<Poly> out;
    out.reserve(polys.size());
    for (const auto& p : polys) out.push_back(specialize(p, n));
    return out;
  }

 private:
  static std::vector<int> signs_at_infinity(const std::vector<Poly>& v) {
    std::vector<int> out;
    out.reserve(v.size());
    for (const auto& p : v) out.push_back(p.is_zero() ? 0 : p.lead().sign());
    return out;
  }
};

namespace detail {

struct Normalized {
  ParamPoly poly;
  RatFunc factor;
};

/// Writes e = factor * e' with e' having jointly primitive integer-polynomial coefficients.
inline Normalized normalize_param(const ParamPoly& e, const Rational& threshold, std::size_t index) {
  Poly lcm_den = Poly::constant(Rational(1));
  for (const auto& c : e.coefficients()) {
    if (c.is_zero()) continue;
    Poly g = poly_gcd(lcm_den, c.den());
    lcm_den = monic(poly_exact_div(lcm_den * c.den(), g));
  }
  std::vector<Poly> nums;
  nums.reserve(e.size());
  Poly g;  // zero
  for (const auto& c : e.coefficients()) {
    Poly scaled = c.is_zero() ? Poly{} : c.num() * poly_exact_div(lcm_den, c.den());
    nums.push_back(scaled);
    if (!scaled.is_zero()) g = g.is_zero() ? monic(scaled) : poly_gcd(g, scaled);
  }
  BigInt cnum = 0;
  BigInt cden = 1;
  for (auto& p : nums) {
    if (p.is_zero()) continue;
    p = poly_exact_div(p, g);
    Rational c = content(p);
    mpz_gcd(cnum.get_mpz_t(), cnum.get_mpz_t(), c.num().get_mpz_t());
    mpz_lcm(cden.get_mpz_t(), cden.get_mpz_t(), c.den().get_mpz_t());
  }
  Rational c(cnum, cden);
  std::vector<RatFunc> coeffs;
  coeffs.reserve(nums.size());
  for (const auto& p : nums) coeffs.emplace_back(p / c);

  for (const Poly* part : {&g, &lcm_den}) {
    if (part->degree() >= 1 && certified_sign_above(*part, threshold) <= 0)
      throw CertificationError("param Sturm element " + std::to_string(index) + ": factor " +
                               to_string(*part, "n") + " is not certified positive for n > " +
                               threshold.str());
  }
  return {ParamPoly(std::move(coeffs)), RatFunc(g * c, lcm_den)};
}

}  // namespace detail

/// Euclidean remainder sequence of (P, P') over Q(n) with positive-factor normalization.
inline ParamSturmSeq build_param_sturm(const ParamPoly& p, const Rational& threshold = Rational(12)) {
  if (p.degree() < 1) throw std::invalid_argument("build_param_sturm: need positive degree in x");
  if (p.lead().is_zero()) throw std::invalid_argument("build_param_sturm: zero leading coefficient");
  ParamSturmSeq seq;
  seq.threshold = threshold;
  auto push = [&](const ParamPoly& raw) {
    auto nz = detail::normalize_param(raw, threshold, seq.polys.size());
    seq.polys.push_back(std::move(nz.poly));
    seq.factor_ledger.push_back(std::move(nz.factor));
  };
  push(p);
  push(poly_derivative(p));
  for (;;) {
    ParamPoly r = -poly_rem(seq.polys[seq.polys.size() - 2], seq.polys.back());
    if (r.is_zero()) break;
    push(r);
  }
  for (const auto& e : seq.polys) {
    // Normalized coefficients are polynomials in n (denominator 1).
    seq.zero_terms.push_back(primitive_part(e.coeff(0).num()));
    seq.lead_terms.push_back(primitive_part(e.lead().num()));
  }
  return seq;
}

}  // namespace pinchlab
