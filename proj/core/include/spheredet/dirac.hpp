#pragma once

// Zeta function and determinant of the Dirac operator on the round unit
// sphere S^n. With n = 2k (even) or n = 2k-1 (odd):
//
//   even: zeta(s) = 2^{k+1}/(2k-1)! sum_a d[a] zeta_R(2s-2a-1)
//   odd:  zeta(s) = 2^k/(2k-2)!     sum_a e[a] (2^{2s-2a}-1) zeta_R(2s-2a)
//
// det(D) = exp(i phi) exp(-zeta'(0)/2), phi = (pi/2) zeta(0). The eta
// invariant vanishes on round spheres and is not carried.

#include <vector>

#include "spheredet/rational.hpp"
#include "spheredet/real.hpp"

namespace spheredet::dirac {

struct DiracReport {
  int n = 0;
  Real zeta_zero;
  // Exact value; zero for odd n.
  Rational zeta_zero_exact;
  Real zeta_prime_zero;
  Real phase;
  Real abs_det;
  // |det - 1| in the complex plane.
  Real distance_to_one;
  // Bound on the error of zeta_prime_zero.
  Real error_bound;
  Precision precision = 0;
};

// Throws special::PoleError naming the offending alpha.
Real dirac_zeta(int n, const Real& s, Precision prec);

// Through the reflected form sum d[a] (-1)^{a+1} (2 pi)^{-2a-2} (2a+1)! zeta_R(2a+2).
Real dirac_zeta_zero(int n, Precision prec);

// 2^{k+1}/(2k-1)! sum d[a] zeta_R(-2a-1) as a rational; 0 for odd n.
Rational dirac_zeta_zero_exact(int n);

struct DerivativeValue {
  Real value;
  Real error;
  Precision precision;
};

DerivativeValue dirac_zeta_prime_zero(int n, Precision prec);

Real dirac_phase(int n, Precision prec);

DiracReport dirac_det(int n, Precision prec);

struct SeriesValue {
  Real value;
  Real error;
};

// 2^{floor(n/2)+1} sum_m C(m+n-1, n-1) (n/2+m)^{-2s}, 2s > n.
SeriesValue dirac_spectral_series(int n, const Real& s, Precision prec, double tolerance = 1e-15);

struct BoundSequences {
  // Index 0 holds k = 1.
  std::vector<Real> a;
  std::vector<Real> b;
  std::vector<Real> a_ratio;  // a_ratio[i] = A(i+2)/A(i+1)
  std::vector<Real> b_ratio;  // b_ratio[i] = B(i+2)/B(i+1)
  // |zeta_{S^{2k}}(0)| <= C_R A(k) and |zeta'_{S^{2k-1}}(0)| <= B(k); B(1) has no sphere.
  std::vector<bool> zeta_zero_within;
  std::vector<bool> zeta_prime_within;
};

BoundSequences bound_sequences(int k_max, Precision prec);

}  // namespace spheredet::dirac
