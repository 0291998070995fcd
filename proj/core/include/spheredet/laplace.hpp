#pragma once

// Laplace-type operators L = Delta + (n-1)R/(4n) - alpha^2 on the unit S^n,
// 0 <= alpha <= (n-1)/2. Eigenvalues (m + (n-1)/2)^2 - alpha^2 with
// multiplicity C(m+n, n) - C(m+n-2, n).
//
// zeta'_L(0) is assembled from four Barnes derivatives at the shifts
// (n-1)/2 - alpha, (n+1)/2 - alpha, (n-1)/2 + alpha, (n+1)/2 + alpha, plus
// ln(n-1) when alpha = (n-1)/2 (constant kernel), minus the polynomial
// correction sum_j alpha^{2j}/j N_{2j}(n) sum_{i<j} 1/(2i+1).

#include <array>
#include <optional>

#include "spheredet/barnes.hpp"
#include "spheredet/rational.hpp"
#include "spheredet/real.hpp"

namespace spheredet::laplace {

enum class Operator { Ordinary, Yamabe, Custom };

const char* to_string(Operator op);

struct LaplaceParams {
  int n = 0;
  Rational alpha;
  Rational a_minus;  // (n-1)/2
  Rational a_plus;   // (n+1)/2
  // a_- - alpha, a_+ - alpha, a_- + alpha, a_+ + alpha
  std::array<Rational, 4> shifts;
  bool has_kernel = false;
  Operator op = Operator::Custom;
};

// alpha is required for Custom and ignored otherwise. Throws
// std::invalid_argument for n < 2 or alpha outside [0, (n-1)/2].
LaplaceParams make_params(int n, Operator op, std::optional<Rational> alpha = std::nullopt);

Rational correction_term(int n, const Rational& alpha);

struct ZetaPrimeValue {
  Real value;
  Real error;
  Precision precision = 0;
};

ZetaPrimeValue laplace_zeta_prime_zero(const LaplaceParams& p, Precision prec,
                                       barnes::Confirm confirm = barnes::Confirm::Yes);

// Independent continuation of the eigenvalue sum: low modes summed exactly,
// the rest expanded in alpha^2/(m+(n-1)/2)^2 and reduced to Hurwitz zetas.
// Restricted to n <= 6. The kernel (alpha = (n-1)/2, m = 0) is excluded.
ZetaPrimeValue spectral_oracle_zeta_prime(int n, const Rational& alpha, Precision prec);
Real spectral_oracle_zeta_zero(int n, const Rational& alpha, Precision prec);

// -(1/n) log vol(S^n), vol(S^n) = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
Real log_lambda(int n, Precision prec);

struct LaplaceReport {
  LaplaceParams params;
  Real zeta_prime_zero;
  Real error_bound;
  Rational correction;
  Real kernel_term;
  Real det;
  bool rescaled = false;
  Real log_lambda;
  Real rescaled_zeta_prime_zero;
  Real rescaled_det;
  Precision precision = 0;
};

LaplaceReport laplace_det(const LaplaceParams& p, Precision prec, barnes::Confirm confirm = barnes::Confirm::Yes);

// Ordinary Laplacian on the unit-volume sphere; odd n only, where zeta(0) = -1.
LaplaceReport rescaled_det(int n, Precision prec, barnes::Confirm confirm = barnes::Confirm::Yes);

}  // namespace spheredet::laplace
