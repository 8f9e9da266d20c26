#pragma once

#include "pinchlab/polynomial.hpp"

#include <array>
#include <stdexcept>

namespace pinchlab {

/// Published coefficient families used to certify c0(n,1) >= 1 + 7/n and
/// c0(n,k) >= 1/k + k/((k-1)n). All polynomials are in the variable n,
/// coefficients in ascending degree, as tabulated.
struct AppendixFixtures {
  std::array<Poly, 7> Z;  // zero-order terms of the simplified Sturm sequence of Q(x,1,n,1+7/n)
  std::array<Poly, 7> I;  // leading terms of the same sequence
  std::array<Poly, 6> q;  // simplified Sturm sequence of I_2

  static const AppendixFixtures& get() {
    static const AppendixFixtures f = make();
    return f;
  }

 private:
  static AppendixFixtures make() {
    AppendixFixtures f;
    f.Z[0] = poly_from_ints({7, -19, 15, -1, -2});
    f.Z[1] = poly_from_ints({1});
    f.Z[2] = poly_from_ints({0, 2744, -12348, 18172, -8453, -1794, 1535, 144});
    f.Z[3] = poly_from_ints({0, 16672544, -60658864, 78969576, -38201184, -2317896, 6372732, -576295,
                             -270278, 6081, 3584});
    f.Z[4] = poly_from_ints({2529924096LL, -11497601472LL, 20565314112LL, -18321051392LL,
                             8896937056LL, -2856559664LL, 619264184, 142496512, -32213404, -29801085,
                             -21819236, 4720867, 725886, -296460, -40000});
    f.Z[5] = poly_from_ints({-165288374272LL, 822014504192LL, -1439948464640LL, 635221775104LL,
                             1099756498624LL, -1442680610560LL, 317014594400LL, 331846621568LL,
                             -142328426016LL, -34283941676LL, 15836869820LL, 3675343420LL, -667512847,
                             -214699395, 31704806, 13123168, 994304});
    f.Z[6] = poly_from_ints({330576748544LL, -422075670016LL, -593003666752LL, 717369012864LL,
                             326600077888LL, -375952652096LL, -61529189456LL, 54892083792LL,
                             9999889760LL, -2733091200LL, -549429077, 149191472, 43911424, 2985984});

    f.I[0] = poly_from_ints({-1});
    f.I[1] = poly_from_ints({-1});
    f.I[2] = poly_from_ints({-192080, 263424, -60368, -13272, -53, 144});
    f.I[3] = poly_from_ints({90354432, -180708864, 96693072, -9686320, 6803552, -3159968, 71104, 240196,
                             8186, -2400});
    f.I[4] = poly_from_ints({2529924096LL, -16557449664LL, 37348649856LL, -36713556544LL,
                             13721909824LL, -526931104, 1003345392, -687439728, -136384936, 21404941,
                             7869536, -1740356, -780868, -68800});
    f.I[5] = poly_from_ints({165288374272LL, -822014504192LL, 1463561089536LL, -741689414144LL,
                             -920500835072LL, 1357950741952LL, -451152740416LL, -132175466304LL,
                             73039703968LL, 20211061820LL, -9966788912LL, -1997678860LL, 392467304,
                             110406478, -19057514, -7572032, -594432});
    f.I[6] = f.Z[6];

    f.q[0] = f.I[2];
    f.q[1] = poly_from_ints({263424, -120736, -39816, -212, 720});
    f.q[2] = poly_from_ints({169381632, -188065528, 33126282, 4780729});
    f.q[3] = poly_from_ints({-14501462505796LL, 11364288885852LL, -795070863791LL});
    f.q[4] = poly_from_ints({11296812839226538LL, -7895204048274613LL});
    f.q[5] = poly_from_ints({-1});
    return f;
  }
};

/// Reference sign patterns for n -> +infinity.
inline constexpr std::array<int, 7> kZeroTermSigns = {-1, +1, +1, +1, -1, +1, +1};
inline constexpr std::array<int, 7> kLeadTermSigns = {-1, -1, +1, -1, -1, -1, +1};
/// Reference signs of q_i(12) and q_i(+infinity).
inline constexpr std::array<int, 6> kQSignsAt12 = {+1, +1, +1, +1, -1, -1};
inline constexpr std::array<int, 6> kQSignsAtInfinity = {+1, +1, +1, -1, -1, -1};

/// Closed-form a_i(n) for fixed k, with n^2 (k-1)^2 Q(x,k,n,1/k + k/((k-1)n)) = sum a_i x^i.
inline Poly a_coefficient(int i, long k) {
  if (k < 2) throw std::invalid_argument("a_coefficient: k >= 2 required");
  const Poly n = Poly::x();
  const Rational K(k);
  auto c = [](const Rational& v) { return Poly::constant(v); };
  auto lin = [&](const Rational& a, const Rational& b) { return n * a + c(b); };  // a n + b
  const Poly n_minus_k = lin(1, -K);
  const Poly n_minus_k2 = lin(1, -K * K);
  const Rational km1 = K - 1;
  const Rational k2 = K * K, k3 = k2 * K, k4 = k3 * K, k5 = k4 * K;
  const Poly n2 = n * n, n3 = n2 * n, n4 = n3 * n;
  switch (i) {
    case 0:
      return -(n * n_minus_k * n_minus_k * n_minus_k * km1 * lin(2 * km1, k2));
    case 1:
      return -(n * n_minus_k * n_minus_k * km1 * lin(5 * k2 - 12 * K + 6, k2 * (4 * K - 6)));
    case 2:
      return n4 * (-6 * km1 * km1) + n3 * (km1 * (-3 * k3 + 22 * k2 - 30 * K + 6)) +
             n2 * (K * (-3 * k4 + 9 * k3 + 11 * k2 - 21 * K + 6)) +
             n * (k3 * (6 * k3 - 29 * k2 + 26 * K - 9)) + c(k5 * (K + 3));
    case 3:
      return n3 * (-2 * km1 * (5 * k2 - 12 * K + 6)) +
             n2 * (k5 - 5 * k4 - 17 * k3 + 37 * k2 - 22 * K + 2) +
             n * (k2 * (-4 * k4 + 37 * k3 - 45 * k2 + 32 * K - 4)) + c(2 * k4 * (-2 * k2 - 5 * K + 1));
    case 4:
      return n3 * (-6 * km1 * km1) + n2 * (15 * k3 - 37 * k2 + 30 * K - 6) +
             n * (k2 * (k4 - 22 * k3 + 37 * k2 - 42 * K + 12)) + c(6 * k4 * (k2 + 2 * K - 1));
    case 5:
      return n_minus_k2 * lin(-5 * k3 + 17 * k2 - 18 * K + 6, 4 * k4 + 6 * k3 - 6 * k2);
    case 6:
      return -(n_minus_k2 * lin(2 * km1, (K + 2) * k2)) * km1;
    default:
      throw std::out_of_range("a_coefficient: index must be in 0..6");
  }
}

}  // namespace pinchlab
