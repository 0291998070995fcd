#pragma once

// Exact polynomial coefficient families used by the determinant formulas.
//
//   DiracEven(k):   prod_{p=1}^{k-1} (x - p^2)        = sum_a d[a] x^a
//   DiracOdd(k):    prod_{p=1}^{k-1} (x - (p-1/2)^2)  = sum_a e[a] x^a
//   LaplacePoly(n): prod_{p=1}^{n-2} (x + (n-1)/2 - p) = sum_r N~[r] x^r
//
// The Dirac families are generated by their three-term recursions; the
// Laplace family by repeated multiplication with a linear factor. Tables are
// memoized and shared between threads.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "spheredet/rational.hpp"

namespace spheredet::coeffs {

enum class CoeffKind { DiracEven, DiracOdd, LaplacePoly };

struct CoeffTable {
  CoeffKind kind;
  int index;
  // coeffs[a] multiplies x^a.
  std::vector<Rational> coeffs;
};

const CoeffTable& dirac_coeffs_even(int k);
const CoeffTable& dirac_coeffs_odd(int k);
const CoeffTable& laplace_coeffs(int n);

// N_{2j}(n) = 2 N~_{2j-2}(n) / (n-1)!, for 1 <= j <= floor(n/2).
Rational big_n(int n, int j);

// sum_{i=0}^{j-1} 1/(2i+1)
Rational odd_harmonic(int j);
// H_n = sum_{i=1}^{n} 1/i
Rational harmonic(int n);

// Coefficients (ascending) of prod (x - r) over the given roots.
std::vector<Rational> expand_roots(const std::vector<Rational>& roots);

// Horner evaluation of an ascending coefficient list.
Rational evaluate(const std::vector<Rational>& coeffs, const Rational& x);

}  // namespace spheredet::coeffs
