#pragma once

// Riemann and Hurwitz zeta values at the points the determinant formulas
// consume, Bernoulli numbers, and the constants gamma and log(2 pi).
//
// Hurwitz values come from Euler-Maclaurin summation,
//
//   zeta(s,a) = sum_{k<N} (a+k)^-s + X^{1-s}/(s-1) + X^-s/2
//             + sum_{j=1}^{M} B_2j/(2j)! (s)_{2j-1} X^{-s-2j+1} + R,   X = a+N,
//
// with N and M planned so that the remainder bound
//
//   |R| <= 4 zeta(2M) (2 pi)^-2M  integral_X^inf |f^(2M)|
//
// meets the requested tolerance. Derivatives in s differentiate each piece.

#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spheredet/rational.hpp"
#include "spheredet/real.hpp"

namespace spheredet::special {

// Cutoffs chosen for one Euler-Maclaurin evaluation.
struct EulerMaclaurinPlan {
  long direct_terms = 0;  // N
  long corrections = 0;   // M
  Precision working_precision = 0;
};

struct Certified {
  Real value;
  Real error;  // rigorous absolute bound: truncation + rounding estimate
  EulerMaclaurinPlan plan;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Exact Bernoulli numbers with B_1 = -1/2.
Rational bernoulli(int m);

// zeta_R(m) for m <= 0, exact: zeta(0) = -1/2, zeta(-2a) = 0,
// zeta(1-2a) = -B_2a / 2a.
Rational zeta_nonpositive(int m);
// zeta_R(-2 alpha - 1)
Rational zeta_neg_odd(int alpha);

Real zeta_pos(int m, Precision prec);
Real zeta_prime_pos(int m, Precision prec);
// zeta_R'(-2 alpha - 1) via the differentiated functional equation.
Real zeta_prime_neg_odd(int alpha, Precision prec);
// zeta_R'(-2 alpha), alpha >= 1.
Real zeta_prime_neg_even(int alpha, Precision prec);
// zeta_R(s) for real s != 1.
Real zeta_real(const Real& s, Precision prec);

Real euler_gamma(Precision prec);
Real log_two_pi(Precision prec);

// (2^s - 1) zeta_R(s); throws PoleError at s = 1.
Real zeta_half(const Real& s, Precision prec);

// Envelope constants C_R = zeta(2) and C'_R = |zeta'(2)| + |zeta'(0)|.
Real zeta_bound_constant(Precision prec);
Real zeta_prime_bound_constant(Precision prec);

// Hurwitz zeta zeta_H(s, a), a > 0, s != 1. Accuracy is absolute relative to
// the size of the leading terms, 2^-prec * max(a^-s, a^{1-s}/|s-1|).
Certified hurwitz(const Real& s, const Real& a, Precision prec);
Certified hurwitz(const Real& s, const Rational& a, Precision prec);
// d/ds zeta_H(s, a).
Certified hurwitz_prime(const Real& s, const Real& a, Precision prec);
// d/ds zeta_H(s, a) at s = r <= 0.
Certified hurwitz_prime_at(int r, const Rational& a, Precision prec);

// d/ds zeta_H(s, a) at s = 0, -1, ..., -(R) for R + 1 = tol_log2.size(),
// sharing one Euler-Maclaurin plan. tol_log2[r] is the absolute tolerance
// log2 for entry r. Working precision is at least min_prec and is raised
// until rounding error fits the tolerances.
std::vector<Certified> hurwitz_prime_neg_batch(const Rational& a, std::span<const double> tol_log2,
                                               Precision min_prec);

enum class SpecialTag { ZetaAt, ZetaPrimeAt, ZetaPrimeNegOdd, ZetaPrimeNegEven, EulerGamma, LogTwoPi };

// Memo of big-float special values. Each entry remembers the precision it was
// computed at; a request at higher precision recomputes and replaces it.
class SpecialValueCache {
 public:
  Real zeta_pos(int m, Precision prec);
  Real zeta_prime_pos(int m, Precision prec);
  Real zeta_prime_neg_odd(int alpha, Precision prec);
  Real zeta_prime_neg_even(int alpha, Precision prec);
  Real euler_gamma(Precision prec);
  Real log_two_pi(Precision prec);

  std::size_t size() const;
  // Precision of the stored entry, 0 when absent.
  Precision stored_precision(SpecialTag tag, long index) const;

 private:
  template <typename Compute>
  Real lookup(SpecialTag tag, long index, Precision prec, Compute&& compute);

  mutable std::shared_mutex mutex_;
  std::map<std::pair<SpecialTag, long>, Real> entries_;
};

SpecialValueCache& shared_cache();

}  // namespace spheredet::special
