#pragma once

#include "pinchlab/appendix_fixtures.hpp"
#include "pinchlab/parallel.hpp"
#include "pinchlab/param_sturm.hpp"
#include "pinchlab/ratfunc.hpp"
#include "pinchlab/report.hpp"
#include "pinchlab/sturm.hpp"
#include "pinchlab/surd.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pinchlab {

// ---------------------------------------------------------------------------
// The gradient-term polynomial Q(x, k, n, alpha)

/// Q with coefficients in any commutative ring F (Rational for concrete
/// parameters, RatFunc to keep n symbolic).
template <class F>
Polynomial<F> build_q_generic(const F& k, const F& n, const F& a) {
  const F one(1);
  const F k2 = k * k, k3 = k2 * k;
  const F n2 = n * n;
  const F a2 = a * a;
  const F kmn = k - n;
  const F nmk = n - k;
  std::vector<F> c(7, F(0));
  c[6] = k2 * (a * (k - one) - one) * (a * (k + F(2)) - one);
  c[5] = k * (a2 * k * (F(-4) * k2 + F(3) * k * (n - F(2)) + n + F(6)) +
              a * (F(10) * k2 - F(6) * k * n - n) + F(3) * n - F(6) * k);
  c[4] = a2 * k2 * (F(6) * k2 + F(3) * k * (F(4) - F(3) * n) + F(2) * n2 - F(5) * n - F(6)) +
         a * k * (k3 - F(24) * k2 + F(2) * k * (F(11) * n + F(3)) - n * (F(4) * n + one)) - k3 +
         F(12) * k2 - F(13) * k * n + F(2) * n2;
  c[3] = a2 * k2 * (F(-4) * k2 + k * (F(9) * n - F(10)) - F(4) * n2 + F(7) * n + F(2)) +
         a * k *
             (F(-4) * k3 + k2 * (F(3) * n + F(32)) - F(2) * k * (F(19) * n + F(4)) +
              F(5) * n * (F(2) * n + one)) +
         F(2) * k3 - k2 * (F(3) * n + F(10)) + F(17) * k * n - F(6) * n2;
  c[2] = kmn * (a2 * k2 * (k - F(2) * n + F(3)) +
                a * k * (F(6) * k2 - k * (F(3) * n + F(22)) + F(12) * n + F(3)) +
                F(3) * k * (n + one) - F(4) * n);
  c[1] = nmk * nmk * (-(a * k * (F(4) * k - n - F(6))) - F(2) * k - n);
  c[0] = (a * k + one) * kmn * kmn * kmn;
  return Polynomial<F>(std::move(c));
}

inline void check_parameters(long k, long n) {
  if (n < 3 || k < 1 || k > n)
    throw std::invalid_argument("parameters must satisfy 1 <= k <= n, n >= 3 (got n=" + std::to_string(n) +
                                ", k=" + std::to_string(k) + ")");
}

/// Q(x, k, n, alpha) as an exact polynomial in x of degree <= 6.
inline Poly build_q(long k, long n, const Rational& alpha) {
  check_parameters(k, n);
  if (alpha.sign() <= 0) throw std::invalid_argument("build_q: alpha must be positive");
  return build_q_generic(Rational(k), Rational(n), alpha);
}

/// Q(x, 1, n, 1 + 7/n) with n kept symbolic.
inline ParamPoly build_q_k1_alpha_1_plus_7_over_n() {
  const RatFunc n = RatFunc::variable();
  return build_q_generic(RatFunc(1), n, RatFunc(1) + RatFunc(7) / n);
}

/// -2 (n + (x - 1)(k + x))^3, the value of Q at alpha = 1/k.
inline Poly q_at_inverse_k_closed_form(long k, long n) {
  const Poly x = Poly::x();
  Poly inner = Poly::constant(Rational(n)) + (x - Poly::constant(Rational(1))) * (x + Poly::constant(Rational(k)));
  return inner * inner * inner * Rational(-2);
}

// ---------------------------------------------------------------------------
// Convexity in alpha

/// Q = A alpha^2 + B alpha + C for fixed (k, n).
struct QDecomposition {
  Poly A, B, C;
  Poly inner;  // A = k^2 x^2 (x-1)^2 * inner

  [[nodiscard]] Poly at(const Rational& alpha) const { return A * (alpha * alpha) + B * alpha + C; }
};

inline QDecomposition alpha_decomposition(long k, long n) {
  check_parameters(k, n);
  const Rational K(k), N(n);
  const Poly q0 = build_q_generic(K, N, Rational(0));
  const Poly qp = build_q_generic(K, N, Rational(1));
  const Poly qm = build_q_generic(K, N, Rational(-1));
  QDecomposition d;
  d.C = q0;
  d.A = (qp + qm) * Rational(1, 2) - q0;
  d.B = (qp - qm) * Rational(1, 2);
  d.inner = Poly{(N - K) * (2 * N - K - 3), N * (3 * K + 1) - 2 * K * K - 4 * K + 2, K * K + K - 2};
  return d;
}

/// k^2 x^2 (x-1)^2 * inner, the factored form of the alpha^2 coefficient.
inline Poly alpha_squared_factored(long k, const Poly& inner) {
  const Poly x = Poly::x();
  const Poly xm1 = x - Poly::constant(Rational(1));
  return x * x * xm1 * xm1 * inner * Rational(k * k);
}

// ---------------------------------------------------------------------------
// c0 by exact bisection

struct BisectionStep {
  Rational alpha;
  int positive_roots = 0;
  bool accepted = false;
};

enum class ActiveBound { c0, c2 };

struct C2Value {
  Surd value;
  int branch = 1;  // 1: surd formula, 2: 1/(k-2)
};

struct BoundsResult {
  long n = 0;
  long k = 0;
  Rational delta;
  Rational c0_lo;
  Rational c0_hi;
  bool hi_is_initial_cap = false;
  int iterations = 0;
  std::vector<BisectionStep> transcript;
  std::vector<std::string> findings;

  bool has_c1 = false;
  C2Value c2;
  Surd c1;
  ActiveBound active = ActiveBound::c0;
};

/// Positive-root count of Q at alpha, with x^m deflated.
inline int q_positive_root_count(long k, long n, const Rational& alpha) {
  Poly q = build_q(k, n, alpha);
  if (q.is_zero()) return 0;
  return count_roots_in(q, RightRay::positive_axis());
}

/// Bisection for the largest alpha with Q(., k, n, alpha) <= 0 on (0, inf).
///
/// Bracket [1/k, 6] for k = 1 and [1/k, 1/(k-1) + delta] otherwise; every
/// probe is an exact rational, so each gate decision is exact.
inline BoundsResult c0_bisect(long n, long k, const Rational& delta = Rational(1, 100)) {
  check_parameters(k, n);
  if (delta.sign() <= 0) throw std::invalid_argument("c0_bisect: delta must be positive");
  BoundsResult r;
  r.n = n;
  r.k = k;
  r.delta = delta;
  Rational lo(1, k);
  Rational hi = k == 1 ? Rational(6) : Rational(1, k - 1) + delta;
  if (!nonpositive_on_positive_axis(build_q(k, n, lo)))
    throw std::logic_error("c0_bisect: gate fails at alpha = 1/k for n=" + std::to_string(n) +
                           ", k=" + std::to_string(k));
  bool hi_moved = false;
  while (hi - lo >= delta) {
    Rational mid = (lo + hi) * Rational(1, 2);
    Poly q = build_q(k, n, mid);
    const int roots = q.is_zero() ? 0 : count_roots_in(q, RightRay::positive_axis());
    const bool ok = nonpositive_on_positive_axis(q);
    r.transcript.push_back({mid, roots, ok});
    ++r.iterations;
    if (ok) {
      lo = mid;
    } else {
      hi = mid;
      hi_moved = true;
    }
  }
  r.c0_lo = lo;
  r.c0_hi = hi;
  r.hi_is_initial_cap = !hi_moved;
  // The bisection presumes the accepted set is an interval; record any probe
  // pair that contradicts it.
  for (const auto& a : r.transcript)
    for (const auto& b : r.transcript)
      if (a.accepted && !b.accepted && a.alpha > b.alpha)
        r.findings.push_back("non-monotone gate: accepted alpha=" + a.alpha.str() +
                             " above rejected alpha=" + b.alpha.str());
  return r;
}

// ---------------------------------------------------------------------------
// c2 and c1

inline bool c2_surd_branch(long n, long k) { return k == 1 || k == 2 || (k >= 3 && n > k * (k - 1)); }

/// Closed-form zero-order bound for the spherical case.
inline C2Value c2_closed_form(long n, long k) {
  check_parameters(k, n);
  if (!c2_surd_branch(n, k)) return {Surd(Rational(1, k - 2)), 2};
  const BigInt radicand = BigInt(n) * BigInt(n - k) * BigInt(n + 2 - 2 * k);
  Surd s = Surd::sqrt_of(radicand) * Surd(Rational(4)) + Surd(Rational(n * (6 + n) - 2 * k * (n + 2)));
  return {s / Rational(k * (n - 2) * (n - 2)), 1};
}

/// c0 by bisection plus c2, combined as c1 = min(c0_lo, c2) by exact comparison.
inline BoundsResult c1_combined(long n, long k, const Rational& delta = Rational(1, 100)) {
  BoundsResult r = c0_bisect(n, k, delta);
  r.c2 = c2_closed_form(n, k);
  r.has_c1 = true;
  if (r.c2.value < Surd(r.c0_lo)) {
    r.c1 = r.c2.value;
    r.active = ActiveBound::c2;
  } else {
    r.c1 = Surd(r.c0_lo);
    r.active = ActiveBound::c0;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Zero-order terms on the sphere

/// k((k-2)a - 1) l1^2 - (k a (2k-n-2) + n) l1 l2 - (n-k)(1 + k a) l2^2.
template <class T>
T claim1_expression(long n, long k, const T& a, const T& l1, const T& l2) {
  const T K(k), N(n), one(1);
  return K * ((K - T(2)) * a - one) * l1 * l1 - (K * a * (T(2) * K - N - T(2)) + N) * l1 * l2 -
         (N - K) * (one + K * a) * l2 * l2;
}

/// Discriminant in l2 of the claim1 quadratic, as a function of alpha.
template <class T>
T claim1_discriminant(long n, long k, const T& a) {
  const T K(k), N(n), one(1);
  const T b = K * a * (T(2) * K - N - T(2)) + N;
  return b * b + T(4) * (N - K) * (one + K * a) * K * ((K - T(2)) * a - one);
}

inline Report claim1_zero_order_check(long n, long k, const Rational& alpha, int samples = 60) {
  check_parameters(k, n);
  const C2Value c2 = c2_closed_form(n, k);
  if (alpha < Rational(1, k) || Surd(alpha) > c2.value)
    throw std::invalid_argument("claim1: alpha must lie in [1/k, c2(n,k)] = [1/" + std::to_string(k) + ", " +
                                c2.value.str() + "]");
  if (samples < 2) throw std::invalid_argument("claim1: need at least 2 samples per axis");
  Report rep;
  rep.name = "claim1 n=" + std::to_string(n) + " k=" + std::to_string(k) + " alpha=" + alpha.str();

  std::vector<Rational> grid;
  grid.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    grid.push_back(Rational::from_double(std::pow(10.0, -3.0 + 6.0 * i / (samples - 1))));
  Rational worst;
  bool have_worst = false;
  std::string witness;
  for (const auto& l1 : grid)
    for (const auto& l2 : grid) {
      Rational e = claim1_expression<Rational>(n, k, alpha, l1, l2);
      if (!have_worst || e > worst) {
        worst = e;
        have_worst = true;
        witness = "l1=" + std::to_string(l1.to_double()) + " l2=" + std::to_string(l2.to_double());
      }
    }
  rep.add("log grid " + std::to_string(samples) + "x" + std::to_string(samples) + " nonpositive",
          worst.sign() <= 0, "max=" + std::to_string(worst.to_double()) + " at " + witness);

  const Rational collinear = claim1_expression<Rational>(n, k, alpha, Rational(1), Rational(1));
  rep.add("collinear l1=l2 nonpositive", collinear.sign() <= 0, "value=" + collinear.str());

  if (c2.branch == 1) {
    const Surd d = claim1_discriminant<Surd>(n, k, c2.value);
    rep.add("discriminant vanishes at c2 = " + c2.value.str(), d.sign() == 0, "D(c2)=" + d.str());
  } else {
    rep.add("coefficient-sign branch (c2 = 1/(k-2))", true, "no discriminant root required");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Verification reports

namespace detail {

/// p(n0) < 0 and p has no root above n0, i.e. p < 0 on [n0, inf).
inline bool negative_from(const Poly& p, const Rational& n0) {
  if (p.is_zero()) return false;
  if (p.eval(n0).sign() >= 0) return false;
  return p.degree() < 1 || certify_no_roots_above(p, n0);
}

inline std::string pair_str(long n, long k) { return "(n=" + std::to_string(n) + ",k=" + std::to_string(k) + ")"; }

}  // namespace detail

/// All coefficients of Q(x, k, n, 1/(k-1)) are nonpositive for k <= n <= k^2.
inline Report verify_prop_a1(long k_max) {
  if (k_max < 2) throw std::invalid_argument("verify_prop_a1: k_max >= 2 required");
  Report rep;
  rep.name = "prop A.1";
  for (long k = 2; k <= k_max; ++k) {
    const Rational alpha(1, k - 1);
    const Rational K(k), km1(k - 1);
    std::string witness;
    bool all_nonpositive = true;
    bool closed_ok = true;
    std::string closed_witness;
    auto closed = [&](const std::string& what, const Rational& got, const Rational& want) {
      if (got != want && closed_ok) {
        closed_ok = false;
        closed_witness = what + ": got " + got.str() + ", expected " + want.str();
      }
    };
    for (long n = std::max(k, 3L); n <= k * k; ++n) {
      const Poly q = build_q(k, n, alpha);
      for (int i = 0; i <= 6; ++i)
        if (q.coeff(static_cast<std::size_t>(i)).sign() > 0 && all_nonpositive) {
          all_nonpositive = false;
          witness = "positive c" + std::to_string(i) + " at " + detail::pair_str(n, k);
        }
      const Rational N(n);
      closed("c6", q.coeff(6), Rational(0));
      closed("c1", q.coeff(1), (N - K) * (N - K) * (N - 6 * K * K + 8 * K) / km1);
      closed("c2", q.coeff(2),
             (K - N) / (km1 * km1) * (2 * K * K * (3 * K * K - 12 * K + 11) + N * (K + 1) * (3 * K - 4)));
      closed("c5", q.coeff(5), 4 * K * (N - K * K) / (km1 * km1));
      if (k == 2) closed("c3 (k=2)", q.coeff(3), -2 * N * (N - 2));
    }
    rep.add("k=" + std::to_string(k) + ": all coefficients <= 0 for k <= n <= k^2", all_nonpositive, witness);
    // Endpoint closed forms; n = k is only admissible when k >= 3.
    const Poly at_k2 = build_q(k, k * k, alpha);
    closed("c3|n=k^2", at_k2.coeff(3), -(K * K * K) * (9 * K - 16) / km1);
    closed("c4|n=k^2", at_k2.coeff(4), -5 * K * K * K / km1);
    if (k >= 3) {
      const Poly at_k = build_q(k, k, alpha);
      closed("c3|n=k", at_k.coeff(3), -(K * K) * (K - 2) * (2 * K - 3) / km1);
      closed("c4|n=k", at_k.coeff(4), -5 * K * K * (K - 2) / km1);
    }
    rep.add("k=" + std::to_string(k) + ": closed forms c1..c6", closed_ok, closed_witness);
  }
  return rep;
}

struct PropA3Options {
  long n_sweep_max = 1000;
  bool fixtures = true;
  bool symbolic = true;
  bool small_n = true;
  unsigned threads = default_thread_count();
};

/// c0(n,1) >= 1 + 7/n: fixture certification, I_2 sign tables, exact sweep,
/// and the symbolic Sturm sequence over Q(n).
inline Report verify_prop_a3(const PropA3Options& opt = {}) {
  if (opt.n_sweep_max < 13) throw std::invalid_argument("verify_prop_a3: n_sweep_max >= 13 required");
  Report rep;
  rep.name = "prop A.3";
  const auto& fx = AppendixFixtures::get();
  const Rational twelve(12);
  if (opt.fixtures) {
    for (std::size_t i = 0; i < 7; ++i) {
      rep.add("Z_" + std::to_string(i) + " has no real root > 12", certify_no_roots_above(fx.Z[i], twelve));
      rep.add("I_" + std::to_string(i) + " has no real root > 12", certify_no_roots_above(fx.I[i], twelve));
    }
    std::vector<int> zs, is;
    for (std::size_t i = 0; i < 7; ++i) {
      zs.push_back(sign_at(fx.Z[i], Point::infinity()));
      is.push_back(sign_at(fx.I[i], Point::infinity()));
    }
    rep.add("reference Z_i sign pattern at large n", zs == std::vector<int>(kZeroTermSigns.begin(), kZeroTermSigns.end()));
    rep.add("reference I_i sign pattern at large n", is == std::vector<int>(kLeadTermSigns.begin(), kLeadTermSigns.end()));
    rep.add("sigma(0) = sigma(inf) = 3 from fixtures", count_sign_changes(zs) == 3 && count_sign_changes(is) == 3);

    const SturmSeq s = build_sturm(fx.I[2]);
    bool proportional = s.size() == fx.q.size();
    for (std::size_t i = 0; proportional && i < s.size(); ++i)
      proportional = positively_proportional(fx.q[i], s.polys[i]);
    rep.add("Sturm sequence of I_2 matches reference q_0..q_5 up to positive scalars", proportional);
    std::vector<int> at12, atinf;
    for (const auto& qi : fx.q) {
      at12.push_back(sign_at(qi, Point::at(twelve)));
      atinf.push_back(sign_at(qi, Point::infinity()));
    }
    rep.add("q_i(12) signs (+,+,+,+,-,-)", at12 == std::vector<int>(kQSignsAt12.begin(), kQSignsAt12.end()));
    rep.add("q_i(inf) signs (+,+,+,-,-,-)",
            atinf == std::vector<int>(kQSignsAtInfinity.begin(), kQSignsAtInfinity.end()));
    rep.add("sigma(12) = sigma(inf) = 1 for I_2", count_sign_changes(at12) == 1 && count_sign_changes(atinf) == 1);
  }

  // Exact sweep over 13 <= n <= n_sweep_max.
  const std::size_t count = static_cast<std::size_t>(opt.n_sweep_max - 12);
  auto ok = parallel_map(
      count,
      [](std::size_t i) -> int {
        const long n = 13 + static_cast<long>(i);
        return nonpositive_on_positive_axis(build_q(1, n, Rational(1) + Rational(7, n))) ? 1 : 0;
      },
      opt.threads);
  long first_bad = -1;
  for (std::size_t i = 0; i < count; ++i)
    if (ok[i] == 0) {
      first_bad = 13 + static_cast<long>(i);
      break;
    }
  rep.add("Q(x,1,n,1+7/n) has no positive root for 13 <= n <= " + std::to_string(opt.n_sweep_max), first_bad < 0,
          first_bad < 0 ? "" : "witness n=" + std::to_string(first_bad));

  if (opt.small_n) {
    long bad = -1;
    for (long n = 3; n <= 12 && bad < 0; ++n)
      if (!nonpositive_on_positive_axis(build_q(1, n, Rational(1) + Rational(7, n)))) bad = n;
    rep.add("direct check Q(x,1,n,1+7/n) <= 0 for 3 <= n <= 12", bad < 0,
            bad < 0 ? "" : "witness n=" + std::to_string(bad));
  }

  if (opt.symbolic) {
    try {
      const ParamSturmSeq ps = build_param_sturm(build_q_k1_alpha_1_plus_7_over_n(), twelve);
      const auto zs = ps.zero_signs_at_infinity();
      const auto is = ps.lead_signs_at_infinity();
      rep.add("symbolic Sturm: Z sign pattern (-,+,+,+,-,+,+)",
              zs == std::vector<int>(kZeroTermSigns.begin(), kZeroTermSigns.end()));
      rep.add("symbolic Sturm: I sign pattern (-,-,+,-,-,-,+)",
              is == std::vector<int>(kLeadTermSigns.begin(), kLeadTermSigns.end()));
      rep.add("symbolic Sturm: sigma(0) = sigma(inf) = 3", ps.sigma_zero() == 3 && ps.sigma_infinity() == 3);
      bool no_roots = true;
      std::string w;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        if (certified_sign_above(ps.zero_terms[i], twelve) == 0 && no_roots) {
          no_roots = false;
          w = "Z_" + std::to_string(i);
        }
        if (certified_sign_above(ps.lead_terms[i], twelve) == 0 && no_roots) {
          no_roots = false;
          w = "I_" + std::to_string(i);
        }
      }
      rep.add("symbolic Sturm: computed Z_i, I_i keep their sign for n > 12", no_roots, w);
      bool equivalent = ps.size() == 7;
      std::string w2;
      for (std::size_t i = 0; equivalent && i < 7; ++i) {
        if (!sign_equivalent_above(ps.zero_terms[i], fx.Z[i], twelve)) {
          equivalent = false;
          w2 = "Z_" + std::to_string(i);
        } else if (!sign_equivalent_above(ps.lead_terms[i], fx.I[i], twelve)) {
          equivalent = false;
          w2 = "I_" + std::to_string(i);
        }
      }
      rep.add("symbolic Sturm: Z_i, I_i sign-equivalent to reference fixtures for n > 12", equivalent, w2);
    } catch (const CertificationError& e) {
      rep.add("symbolic Sturm: normalizing factors certified positive", false, e.what());
    }
  }
  return rep;
}

/// Target lower bound 1/k + k/((k-1)n) for k >= 2.
inline Rational prop_a4_alpha(long k, long n) { return Rational(1, k) + Rational(k, (k - 1) * n); }

/// c0(n,k) >= 1/k + k/((k-1)n) for k >= 2, n >= k^2.
inline Report verify_prop_a4(long k_max, long n_max = 60) {
  if (k_max < 2) throw std::invalid_argument("verify_prop_a4: k_max >= 2 required");
  Report rep;
  rep.name = "prop A.4";
  const Poly n_var = Poly::x();
  for (long k = 2; k <= k_max; ++k) {
    const std::string ks = "k=" + std::to_string(k);
    const Rational K(k);
    std::vector<Poly> a;
    for (int i = 0; i <= 6; ++i) a.push_back(a_coefficient(i, k));

    // (i) scaled identity at 20 probe values of n; every a_i has degree <= 5 in n
    // and the scaled Q has degree <= 7, so 20 agreeing values prove it for all n.
    bool identity = true;
    std::string iw;
    for (int j = 0; j < 20 && identity; ++j) {
      const long n = std::max(k, 3L) + 3 * j;
      const Rational N(n);
      const Poly lhs = build_q(k, n, prop_a4_alpha(k, n)) * (N * N * Rational((k - 1) * (k - 1)));
      std::vector<Rational> rc;
      for (int i = 0; i <= 6; ++i) rc.push_back(a[static_cast<std::size_t>(i)].eval(N));
      if (!(lhs == Poly(rc))) {
        identity = false;
        iw = "mismatch at n=" + std::to_string(n);
      }
    }
    rep.add(ks + ": n^2 (k-1)^2 Q(1/k + k/((k-1)n)) = sum a_i x^i at 20 probe n", identity, iw);

    // (ii) sign checks on [k^2+1, inf).
    const Rational from(k * k + 1);
    for (int i : {0, 1, 6, 2, 3, 4})
      rep.add(ks + ": a_" + std::to_string(i) + " < 0 for n >= k^2+1",
              detail::negative_from(a[static_cast<std::size_t>(i)], from));

    // (iii) a_5 regimes.
    if (k == 2) {
      const Poly reference = (n_var - Poly::constant(Rational(4))) * (n_var - Poly::constant(Rational(44))) * Rational(-2);
      rep.add("k=2: a_5 = -2(n-4)(n-44)", a[5] == reference);
      rep.add("k=2: a_5 < 0 for n > 44", detail::negative_from(a[5], Rational(45)));
    } else if (k == 3) {
      const Poly reference = (n_var - Poly::constant(Rational(9))) *
                           (n_var * Rational(5) - Poly::constant(Rational(72))) * Rational(-6);
      rep.add("k=3: a_5 = -6(n-9)(5n-72)", a[5] == reference);
      rep.add("k=3: a_5 < 0 for n > 15", detail::negative_from(a[5], Rational(16)));
    } else {
      const Rational slope = -5 * K * K * K + 17 * K * K - 18 * K + 6;
      const Rational lhs = (K * K + 1) * slope + 4 * K * K * K * K + 6 * K * K * K - 6 * K * K;
      const Rational rhs = -(K * (K - 4) + 2) * (5 * K * K * K - K * K + 3 * K - 3);
      rep.add(ks + ": a_5 bound chain identity and negative slope", lhs == rhs && slope.sign() < 0 && rhs.sign() < 0,
              "bound=" + rhs.str());
      rep.add(ks + ": a_5 < 0 for n >= k^2+1", detail::negative_from(a[5], from));
    }

    // Direct gate at the target alpha for k^2 <= n <= n_max.
    long bad = -1;
    for (long n = k * k; n <= std::max(n_max, k * k) && bad < 0; ++n)
      if (!nonpositive_on_positive_axis(build_q(k, n, prop_a4_alpha(k, n)))) bad = n;
    rep.add(ks + ": Q(1/k + k/((k-1)n)) <= 0 on x > 0 for k^2 <= n <= " + std::to_string(std::max(n_max, k * k)),
            bad < 0, bad < 0 ? "" : "witness n=" + std::to_string(bad));
  }

  // (iv) residual windows not covered by the coefficient signs.
  struct Window {
    long k, lo, hi;
  };
  for (const Window w : {Window{2, 4, 44}, Window{3, 9, 15}}) {
    if (w.k > k_max) continue;
    std::string witness;
    bool ok = true;
    for (long n = w.lo; n <= w.hi; ++n) {
      const Rational target = prop_a4_alpha(w.k, n);
      const bool gate = nonpositive_on_positive_axis(build_q(w.k, n, target));
      const BoundsResult b = c0_bisect(n, w.k);
      rep.findings.push_back(detail::pair_str(n, w.k) + " target=" + target.str() + " c0_lo=" + b.c0_lo.str() +
                             " c0_hi=" + b.c0_hi.str());
      if (!gate && ok) {
        ok = false;
        witness = detail::pair_str(n, w.k) + " target=" + target.str();
      }
    }
    rep.add("k=" + std::to_string(w.k) + ": c0 >= 1/k + k/((k-1)n) for " + std::to_string(w.lo) +
                " <= n <= " + std::to_string(w.hi) + " (exact gate at the target alpha)",
            ok, witness);
  }
  return rep;
}

/// 1/k <= c0 <= 1/(k-1) (+ delta), and c0 within delta of 1/(k-1) whenever n <= k^2.
inline Report verify_alpha_sandwich(long n_max, long k_max, const Rational& delta = Rational(1, 100),
                                    unsigned threads = default_thread_count()) {
  if (n_max < 3 || k_max < 1) throw std::invalid_argument("verify_alpha_sandwich: need n_max >= 3, k_max >= 1");
  struct Pair {
    long n, k;
  };
  std::vector<Pair> pairs;
  for (long n = 3; n <= n_max; ++n)
    for (long k = 1; k <= std::min(n, k_max); ++k) pairs.push_back({n, k});
  auto results = parallel_map(
      pairs.size(), [&](std::size_t i) { return c0_bisect(pairs[i].n, pairs[i].k, delta); }, threads);
  Report rep;
  rep.name = "alpha sandwich";
  std::string lower_w, upper_w, endpoint_w, gate_w;
  for (const auto& b : results) {
    const std::string p = detail::pair_str(b.n, b.k);
    if (b.c0_lo < Rational(1, b.k) && lower_w.empty()) lower_w = p;
    if (!nonpositive_on_positive_axis(build_q(b.k, b.n, b.c0_lo)) && gate_w.empty()) gate_w = p;
    if (b.k >= 2) {
      if (b.c0_hi > Rational(1, b.k - 1) + delta && upper_w.empty()) upper_w = p;
      if (b.n <= b.k * b.k && b.c0_lo < Rational(1, b.k - 1) - delta && endpoint_w.empty()) endpoint_w = p;
    } else if (b.c0_hi > Rational(6) && upper_w.empty()) {
      upper_w = p;
    }
    for (const auto& f : b.findings) rep.findings.push_back(p + " " + f);
  }
  const std::string range = std::to_string(pairs.size()) + " pairs, n <= " + std::to_string(n_max);
  rep.add("1/k <= c0_lo (" + range + ")", lower_w.empty(), lower_w);
  rep.add("c0_hi <= 1/(k-1) + delta for k >= 2, <= 6 for k = 1", upper_w.empty(), upper_w);
  rep.add("c0_lo >= 1/(k-1) - delta whenever 2 <= k, n <= k^2", endpoint_w.empty(), endpoint_w);
  rep.add("Q(., c0_lo) <= 0 on x > 0 for every pair", gate_w.empty(), gate_w);
  return rep;
}

}  // namespace pinchlab
