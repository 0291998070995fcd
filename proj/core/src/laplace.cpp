#include "spheredet/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "spheredet/coeffs.hpp"
#include "spheredet/special_values.hpp"

namespace spheredet::laplace {

namespace {

// B_m(x) = sum_k C(m,k) B_k x^{m-k}
Rational bernoulli_polynomial(int m, const Rational& x) {
  Rational acc(0);
  Rational xp(1);  // x^{m-k}, built from k = m downwards
  for (int k = m; k >= 0; --k) {
    acc += Rational(binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(k))) * special::bernoulli(k) * xp;
    xp *= x;
  }
  acc.canonicalize();
  return acc;
}

// zeta_H(-q, a) = -B_{q+1}(a)/(q+1)
Rational hurwitz_nonpositive(int q, const Rational& a) {
  Rational v = -bernoulli_polynomial(q + 1, a) / (q + 1);
  v.canonicalize();
  return v;
}

// digamma at an integer or half-integer.
Real digamma_half_integer(const Rational& x, Precision prec) {
  Real gamma = special::euler_gamma(prec);
  if (x.get_den() == 1) {
    const int k = static_cast<int>(x.get_num().get_si());
    return Real(coeffs::harmonic(k - 1), prec) - gamma;
  }
  // psi(K + 1/2) = -gamma - 2 log 2 + sum_{i=1}^{K} 2/(2i-1)
  const int big_k = static_cast<int>(Rational(x - Rational(1, 2)).get_num().get_si());
  Rational s(0);
  for (int i = 1; i <= big_k; ++i) s += Rational(2, 2 * i - 1);
  return Real(s, prec) - gamma - const_log2(prec) * 2L;
}

// mult(m) = C(m+n,n) - C(m+n-2,n) as a polynomial in t = m + (n-1)/2.
std::vector<Rational> multiplicity_polynomial(int n) {
  const Rational c = fraction(n - 1, 2);
  std::vector<Rational> upper_roots;
  std::vector<Rational> lower_roots;
  for (int j = 1; j <= n; ++j) upper_roots.emplace_back(c - j);
  for (int j = -1; j <= n - 2; ++j) lower_roots.emplace_back(c - j);
  auto up = coeffs::expand_roots(upper_roots);
  auto lo = coeffs::expand_roots(lower_roots);
  const Rational nf(factorial(static_cast<unsigned long>(n)));
  std::vector<Rational> p(up.size());
  for (std::size_t i = 0; i < up.size(); ++i) {
    p[i] = (up[i] - lo[i]) / nf;
    p[i].canonicalize();
  }
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

struct OracleSetup {
  std::vector<Rational> poly;  // p_i
  Rational c_shift;            // m0 + (n-1)/2
  int m0 = 0;
  bool kernel = false;
};

OracleSetup oracle_setup(int n, const Rational& alpha) {
  if (n < 2 || n > 6) throw std::invalid_argument("spectral oracle: n must lie in 2..6");
  const Rational c = fraction(n - 1, 2);
  if (alpha < 0 || alpha > c) throw std::invalid_argument("spectral oracle: alpha outside [0, (n-1)/2]");
  OracleSetup s;
  s.poly = multiplicity_polynomial(n);
  s.kernel = (alpha == c);
  // Low modes split off until (alpha / c')^2 <= 1/4.
  Rational need = 2 * alpha + 1 - c;
  s.m0 = std::max(0, static_cast<int>(std::ceil(need.get_d())));
  if (s.kernel) s.m0 = std::max(s.m0, 1);
  s.c_shift = c + s.m0;
  return s;
}

// Number of expansion orders j so that the neglected tail is below 2^-bits.
int expansion_orders(const OracleSetup& s, const Rational& alpha, double bits) {
  if (alpha == 0) return 0;
  const double rho = std::pow(alpha.get_d() / s.c_shift.get_d(), 2.0);
  double scale = 0.0;
  const double cs = s.c_shift.get_d();
  for (std::size_t i = 0; i < s.poly.size(); ++i) scale += std::fabs(s.poly[i].get_d()) * std::pow(cs, static_cast<double>(i));
  const int deg = static_cast<int>(s.poly.size()) - 1;
  int j = 1;
  for (;; ++j) {
    if (2 * j - deg < 2) continue;
    // zeta_H(sigma, c') <= c'^-sigma (1 + c'/(sigma-1)); geometric tail in rho.
    const double bound = scale * std::pow(rho, j) * (1.0 + cs) / (1.0 - rho);
    if (std::log2(bound) < -bits) return j;
  }
}

}  // namespace

const char* to_string(Operator op) {
  switch (op) {
    case Operator::Ordinary:
      return "ordinary";
    case Operator::Yamabe:
      return "yamabe";
    case Operator::Custom:
      return "custom";
  }
  return "?";
}

LaplaceParams make_params(int n, Operator op, std::optional<Rational> alpha) {
  if (n < 2) throw std::invalid_argument("laplace: dimension must be >= 2");
  LaplaceParams p;
  p.n = n;
  p.op = op;
  p.a_minus = fraction(n - 1, 2);
  p.a_plus = fraction(n + 1, 2);
  switch (op) {
    case Operator::Ordinary:
      p.alpha = p.a_minus;
      break;
    case Operator::Yamabe:
      p.alpha = Rational(1, 2);
      break;
    case Operator::Custom:
      if (!alpha) throw std::invalid_argument("laplace: custom operator needs alpha");
      p.alpha = *alpha;
      break;
  }
  p.alpha.canonicalize();
  if (p.alpha < 0 || p.alpha > p.a_minus) {
    throw std::invalid_argument("laplace: alpha must lie in [0, (n-1)/2], got " + spheredet::to_string(p.alpha));
  }
  p.shifts = {p.a_minus - p.alpha, p.a_plus - p.alpha, p.a_minus + p.alpha, p.a_plus + p.alpha};
  for (auto& s : p.shifts) s.canonicalize();
  p.has_kernel = (p.alpha == p.a_minus);
  return p;
}

Rational correction_term(int n, const Rational& alpha) {
  if (n < 2) throw std::invalid_argument("correction_term: dimension must be >= 2");
  Rational acc(0);
  const Rational a2 = alpha * alpha;
  Rational a2j(1);
  for (int j = 1; j <= n / 2; ++j) {
    a2j *= a2;
    acc += a2j / j * coeffs::big_n(n, j) * coeffs::odd_harmonic(j);
  }
  acc.canonicalize();
  return acc;
}

ZetaPrimeValue laplace_zeta_prime_zero(const LaplaceParams& p, Precision prec, barnes::Confirm confirm) {
  Real acc(prec);
  Real err(64);
  Precision wp = prec;
  for (const auto& a : p.shifts) {
    barnes::BarnesEval e =
        (a == 0) ? barnes::barnes_prime_zero_a0(p.n, prec, confirm) : barnes::barnes_prime_zero(p.n, a, prec, confirm);
    wp = std::max(wp, e.precision);
    acc = acc.with_precision(wp);
    acc += e.value;
    err += e.error_bound;
  }
  if (p.has_kernel) acc += log(Real(static_cast<long>(p.n - 1), wp));
  acc -= Real(correction_term(p.n, p.alpha), wp);
  err += abs(acc).with_precision(64) * pow2(-static_cast<long>(wp) + 4, 64);
  return {acc, err, wp};
}

ZetaPrimeValue spectral_oracle_zeta_prime(int n, const Rational& alpha, Precision prec) {
  const OracleSetup s = oracle_setup(n, alpha);
  const Precision wp = prec + 64;
  const Rational c = fraction(n - 1, 2);
  const Rational a2 = alpha * alpha;

  // Low modes: -sum mult(m) log(lambda_m).
  Real acc(wp);
  for (int m = s.kernel ? 1 : 0; m < s.m0; ++m) {
    const Rational t = c + m;
    const Rational lambda = t * t - a2;
    acc -= log(Real(lambda, wp)) * coeffs::evaluate(s.poly, t);
  }

  // j = 0: 2 sum_i p_i zeta_H'(-i, c')
  std::vector<double> tol(s.poly.size(), -static_cast<double>(wp) + 8.0);
  auto dz = special::hurwitz_prime_neg_batch(s.c_shift, tol, wp);
  Real err(64);
  for (std::size_t i = 0; i < s.poly.size(); ++i) {
    if (s.poly[i] == 0) continue;
    acc += dz[i].value * s.poly[i] * 2L;
    err += dz[i].error * abs(Real(s.poly[i], 64)) * 2L;
  }

  // j >= 1: derivative of (s)_j/j! alpha^{2j} zeta_H(2s+2j-i, c') at s = 0.
  const int orders = expansion_orders(s, alpha, static_cast<double>(prec) + 16.0);
  const Real psi = digamma_half_integer(s.c_shift, wp);
  Rational a2j(1);
  for (int j = 1; j <= orders; ++j) {
    a2j *= a2;
    Real inner(wp);
    for (std::size_t i = 0; i < s.poly.size(); ++i) {
      if (s.poly[i] == 0) continue;
      const int sigma = 2 * j - static_cast<int>(i);
      if (sigma == 1) {
        // Pole of zeta_H at 1 against the simple zero of (s)_j.
        Real pole = Real(coeffs::harmonic(j - 1) / 2, wp) - psi;
        inner += pole * s.poly[i];
      } else if (sigma <= 0) {
        inner += Real(hurwitz_nonpositive(-sigma, s.c_shift) * s.poly[i], wp);
      } else {
        auto h = special::hurwitz(Real(static_cast<long>(sigma), wp), s.c_shift, wp);
        inner += h.value * s.poly[i];
        err += h.error * abs(Real(s.poly[i] * a2j / j, 64));
      }
    }
    acc += inner * (a2j / j);
  }
  err += pow2(-static_cast<long>(prec) - 16, 64);
  return {acc.with_precision(prec), err, wp};
}

Real spectral_oracle_zeta_zero(int n, const Rational& alpha, Precision prec) {
  const OracleSetup s = oracle_setup(n, alpha);
  const Precision wp = prec + 64;
  const Rational c = fraction(n - 1, 2);
  const Rational a2 = alpha * alpha;
  // Exact up to the j-series truncation: low-mode count, then Bernoulli polynomials.
  Rational exact(0);
  for (int m = s.kernel ? 1 : 0; m < s.m0; ++m) exact += coeffs::evaluate(s.poly, c + m);
  for (std::size_t i = 0; i < s.poly.size(); ++i) exact += s.poly[i] * hurwitz_nonpositive(static_cast<int>(i), s.c_shift);
  Real acc(exact, wp);
  const int orders = expansion_orders(s, alpha, static_cast<double>(prec) + 16.0);
  Rational a2j(1);
  for (int j = 1; j <= orders; ++j) {
    a2j *= a2;
    // Only the pole term survives at s = 0: residue 1/2 times 1/j.
    const std::size_t i = static_cast<std::size_t>(2 * j - 1);
    if (i < s.poly.size()) acc += Real(a2j * s.poly[i] / (2 * j), wp);
  }
  return acc.with_precision(prec);
}

Real log_lambda(int n, Precision prec) {
  if (n < 1) throw std::invalid_argument("log_lambda: n must be >= 1");
  const Precision wp = prec + 32;
  Real half_np1(fraction(n + 1, 2), wp);
  Real log_vol = const_log2(wp) + half_np1 * log(const_pi(wp)) - lngamma(half_np1);
  return (-(log_vol / static_cast<long>(n))).with_precision(prec);
}

LaplaceReport laplace_det(const LaplaceParams& p, Precision prec, barnes::Confirm confirm) {
  LaplaceReport r;
  r.params = p;
  auto z = laplace_zeta_prime_zero(p, prec, confirm);
  r.zeta_prime_zero = z.value;
  r.error_bound = z.error;
  r.precision = z.precision;
  r.correction = correction_term(p.n, p.alpha);
  r.kernel_term = p.has_kernel ? log(Real(static_cast<long>(p.n - 1), prec)) : Real(prec);
  r.det = exp(-z.value);
  return r;
}

LaplaceReport rescaled_det(int n, Precision prec, barnes::Confirm confirm) {
  if (n % 2 == 0) throw std::invalid_argument("rescaled_det: only odd n is supported (zeta(0) = -1 there)");
  LaplaceReport r = laplace_det(make_params(n, Operator::Ordinary), prec, confirm);
  r.rescaled = true;
  r.log_lambda = log_lambda(n, r.precision);
  r.rescaled_zeta_prime_zero = r.zeta_prime_zero - r.log_lambda * 2L;
  r.rescaled_det = exp(-r.rescaled_zeta_prime_zero);
  return r;
}

}  // namespace spheredet::laplace
