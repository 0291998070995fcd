#pragma once

// Barnes zeta functions
//
//   zeta_n(s, a) = sum_{m >= 0} C(m+n-1, n-1) (a+m)^-s,   s > n,
//
// (the m = 0 term omitted when a = 0) and their s-derivative at 0.
//
// Continuation goes through the shift decomposition
//
//   C(m+n-1, n-1) = sum_r c_r(a) (a+m)^r   =>   zeta_n(s,a) = sum_r c_r(a) zeta_H(s-r, a),
//
// which carries a rigorous error bound. The contour representation
//
//   zeta_n'(0,a) = (i / 2 pi) \oint e^{az} (1-e^z)^-n (log z + gamma) / z dz
//
// over the boundary of (-inf, r] x [-pi/2, pi/2], traversed clockwise around
// the branch cut, is kept as an independent
// double-precision cross-check.

#include <vector>

#include "spheredet/rational.hpp"
#include "spheredet/real.hpp"

namespace spheredet::barnes {

enum class Method { Series, HurwitzDecomp, Contour };

const char* to_string(Method m);

struct BarnesEval {
  int order = 0;
  Rational shift;
  Real s;
  Method method = Method::HurwitzDecomp;
  Real value;
  Real error_bound;
  // False for Contour, whose error is a quadrature estimate.
  bool rigorous = true;
  Precision precision = 0;
};

struct ShiftDecomposition {
  int order = 0;
  Rational shift;
  // coeffs[r] multiplies (a+m)^r; r = 0..n-1.
  std::vector<Rational> coeffs;
};

struct ContourSpec {
  double right_edge = 0.0;
  double tolerance = 1e-13;
  long node_budget = 2000000;
};

// log n when a is n-1 or n (and n >= 4), log 4 otherwise.
ContourSpec default_contour(int n, const Rational& a);

// max(prec, ceil(1.2 n log2 n) + 64)
Precision cancellation_guard(int n, Precision prec);

const ShiftDecomposition& shift_decompose(int n, const Rational& a);

// Rejects s <= n. Tail of the series is bracketed between integral bounds
// until the bracket is below `tolerance` (or the term budget runs out, in
// which case the wider bracket is reported).
BarnesEval barnes_series(int n, const Rational& a, const Real& s, Precision prec, double tolerance = 1e-12);

// sum_r c_r(a) zeta_H(s - r, a); a > 0, s not in {1..n}.
BarnesEval barnes_continued(int n, const Rational& a, const Real& s, Precision prec);

enum class Confirm { No, Yes };

// zeta_n'(0, a) for a > 0 by the decomposition. With Confirm::Yes the value
// is recomputed at a higher working precision and accepted only when the two
// agree within the first bound.
BarnesEval barnes_prime_zero(int n, const Rational& a, Precision prec, Confirm confirm = Confirm::Yes);

// zeta_n'(0, 0) with the m = 0 term omitted: re-indexed to Riemann zetas.
BarnesEval barnes_prime_zero_a0(int n, Precision prec, Confirm confirm = Confirm::Yes);

// Contour quadrature for zeta_n'(0, a), a > 0. Throws quad::NonConvergence
// when the node budget is exhausted.
BarnesEval barnes_contour_prime_zero(int n, const Rational& a, const ContourSpec& spec);

// zeta_n'(0,1) + (n-1)/(2 pi i) \oint e^z (1-e^z)^-n (gamma log z + log^2 z / 2) dz,
// the a = 0 derivative through the functional equation, on the same box.
BarnesEval barnes_contour_prime_zero_a0(int n, const ContourSpec& spec);

// Residue of zeta_n(s, a) at s = k, 1 <= k <= n: c_{k-1}(a).
Rational barnes_residue(int n, const Rational& a, int k);

}  // namespace spheredet::barnes
