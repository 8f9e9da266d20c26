#pragma once

#include <cmath>
#include <stdexcept>

namespace pinchlab {

inline double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

/// sigma_k of the multiset {mer (once), rot (n-1 times)}.
inline double sigma_k_axisym(int n, int k, double mer, double rot) {
  return binomial(n - 1, k - 1) * mer * std::pow(rot, k - 1) + binomial(n - 1, k) * std::pow(rot, k);
}

/// d sigma_k / d lambda_mer.
inline double dsigma_dmer(int n, int k, double /*mer*/, double rot) {
  return binomial(n - 1, k - 1) * std::pow(rot, k - 1);
}

/// d sigma_k / d lambda_i for one rotational eigenvalue, i.e. sigma_{k-1} of the other n-1 values.
inline double dsigma_drot(int n, int k, double mer, double rot) {
  return binomial(n - 2, k - 2) * mer * std::pow(rot, k - 2) + binomial(n - 2, k - 1) * std::pow(rot, k - 1);
}

/// Both sides of sum_i (d sigma_k / d lambda_i) lambda_i^2 >= k C(n,k)^{-1/k} sigma_k^{1+1/k}.
struct NewtonSides {
  double lhs;
  double rhs;
};

inline NewtonSides newton_maclaurin_sides(int n, int k, double mer, double rot) {
  if (mer <= 0 || rot <= 0) throw std::domain_error("newton_maclaurin_sides: curvatures must be positive");
  const double s = sigma_k_axisym(n, k, mer, rot);
  const double lhs = dsigma_dmer(n, k, mer, rot) * mer * mer + (n - 1) * dsigma_drot(n, k, mer, rot) * rot * rot;
  const double rhs = k / std::pow(binomial(n, k), 1.0 / k) * std::pow(s, 1.0 + 1.0 / k);
  return {lhs, rhs};
}

}  // namespace pinchlab
