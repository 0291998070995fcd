#include "spheredet/dirac.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "spheredet/barnes.hpp"
#include "spheredet/coeffs.hpp"
#include "spheredet/special_values.hpp"

namespace spheredet::dirac {

namespace {

void require_dimension(int n, const char* where) {
  if (n < 2) throw std::invalid_argument(std::string(where) + ": dimension must be >= 2");
}

// 2^e / m! as an exact rational.
Rational power_over_factorial(int e, int m) {
  Rational q(Integer(1) << e, factorial(static_cast<unsigned long>(m)));
  q.canonicalize();
  return q;
}

struct TermSum {
  Real sum;
  Real magnitude;
};

// Sums the derivative terms at working precision wp.
TermSum derivative_terms(int n, Precision wp) {
  auto& cache = special::shared_cache();
  TermSum out{Real(wp), Real(64)};
  if (n % 2 == 0) {
    const int k = n / 2;
    const auto& d = coeffs::dirac_coeffs_even(k).coeffs;
    for (int a = 0; a < k; ++a) {
      Real t = cache.zeta_prime_neg_odd(a, wp) * d[static_cast<std::size_t>(a)];
      out.magnitude += abs(t).with_precision(64);
      out.sum += t;
    }
    out.sum *= power_over_factorial(k + 2, 2 * k - 1);
    out.magnitude *= power_over_factorial(k + 2, 2 * k - 1);
  } else {
    const int k = (n + 1) / 2;
    const auto& e = coeffs::dirac_coeffs_odd(k).coeffs;
    // alpha = 0 contributes -e[0] log 2; its (2^0 - 1) zeta'(0) partner vanishes.
    Real t0 = -(const_log2(wp) * e[0]);
    out.magnitude += abs(t0).with_precision(64);
    out.sum += t0;
    for (int a = 1; a < k; ++a) {
      Rational factor = Rational(1, 1) / Rational(Integer(1) << (2 * a)) - 1;
      Real t = cache.zeta_prime_neg_even(a, wp) * (factor * e[static_cast<std::size_t>(a)]);
      out.magnitude += abs(t).with_precision(64);
      out.sum += t;
    }
    out.sum *= power_over_factorial(k + 1, 2 * k - 2);
    out.magnitude *= power_over_factorial(k + 1, 2 * k - 2);
  }
  return out;
}

}  // namespace

Real dirac_zeta(int n, const Real& s, Precision prec) {
  require_dimension(n, "dirac_zeta");
  const Precision wp = prec + 64;
  Real sw = s.with_precision(wp);
  Real acc(wp);
  if (n % 2 == 0) {
    const int k = n / 2;
    const auto& d = coeffs::dirac_coeffs_even(k).coeffs;
    for (int a = 0; a < k; ++a) {
      Real arg = sw * 2L - Real(2L * a + 1, wp);
      if (arg == Real(1L, wp)) throw special::PoleError("dirac_zeta: pole from zeta_R term alpha = " + std::to_string(a));
      acc += special::zeta_real(arg, wp) * d[static_cast<std::size_t>(a)];
    }
    acc *= power_over_factorial(k + 1, 2 * k - 1);
  } else {
    const int k = (n + 1) / 2;
    const auto& e = coeffs::dirac_coeffs_odd(k).coeffs;
    for (int a = 0; a < k; ++a) {
      Real arg = sw * 2L - Real(2L * a, wp);
      if (arg == Real(1L, wp)) throw special::PoleError("dirac_zeta: pole from zeta_R term alpha = " + std::to_string(a));
      acc += special::zeta_half(arg, wp) * e[static_cast<std::size_t>(a)];
    }
    acc *= power_over_factorial(k, 2 * k - 2);
  }
  return acc.with_precision(prec);
}

Real dirac_zeta_zero(int n, Precision prec) {
  require_dimension(n, "dirac_zeta_zero");
  if (n % 2 == 1) return Real(prec);
  const int k = n / 2;
  const Precision wp = prec + 32;
  const auto& d = coeffs::dirac_coeffs_even(k).coeffs;
  auto& cache = special::shared_cache();
  Real two_pi = const_pi(wp) * 2L;
  Real inv_sq = Real(1L, wp) / (two_pi * two_pi);
  Real scale = inv_sq;  // (2 pi)^{-2a-2}
  Real acc(wp);
  for (int a = 0; a < k; ++a) {
    Rational c = d[static_cast<std::size_t>(a)] * Rational(factorial(static_cast<unsigned long>(2 * a + 1)));
    if (a % 2 == 0) c = -c;
    acc += cache.zeta_pos(2 * a + 2, wp) * scale * c;
    scale *= inv_sq;
  }
  acc *= power_over_factorial(k + 2, 2 * k - 1);
  return acc.with_precision(prec);
}

Rational dirac_zeta_zero_exact(int n) {
  require_dimension(n, "dirac_zeta_zero_exact");
  if (n % 2 == 1) return Rational(0);
  const int k = n / 2;
  const auto& d = coeffs::dirac_coeffs_even(k).coeffs;
  Rational acc(0);
  for (int a = 0; a < k; ++a) acc += d[static_cast<std::size_t>(a)] * special::zeta_neg_odd(a);
  acc *= power_over_factorial(k + 1, 2 * k - 1);
  acc.canonicalize();
  return acc;
}

DerivativeValue dirac_zeta_prime_zero(int n, Precision prec) {
  require_dimension(n, "dirac_zeta_prime_zero");
  Precision wp = prec + 64;
  for (;;) {
    TermSum t = derivative_terms(n, wp);
    // Bits lost to cancellation between the terms.
    const double lost = t.sum.is_zero() ? static_cast<double>(wp) : t.magnitude.log2_abs() - t.sum.log2_abs();
    const double slack = static_cast<double>(wp - prec) - lost;
    if (slack >= 24.0) {
      const long terms_log2 = static_cast<long>(std::ceil(std::log2(static_cast<double>(n) + 1.0)));
      Real err = t.magnitude * pow2(-static_cast<long>(wp) + terms_log2 + 4, 64);
      return {t.sum.with_precision(prec), err, wp};
    }
    wp = prec + static_cast<Precision>(std::ceil(lost)) + 64;
  }
}

Real dirac_phase(int n, Precision prec) {
  return (const_pi(prec + 16) / 2L * dirac_zeta_zero(n, prec + 16)).with_precision(prec);
}

DiracReport dirac_det(int n, Precision prec) {
  require_dimension(n, "dirac_det");
  DiracReport r;
  r.n = n;
  r.zeta_zero = dirac_zeta_zero(n, prec);
  r.zeta_zero_exact = dirac_zeta_zero_exact(n);
  auto dz = dirac_zeta_prime_zero(n, prec);
  r.zeta_prime_zero = dz.value;
  r.error_bound = dz.error;
  r.precision = dz.precision;
  r.phase = dirac_phase(n, prec);
  r.abs_det = exp(-(r.zeta_prime_zero / 2L));
  // |d e^{i phi} - 1|^2 = (d - 1)^2 + 4 d sin^2(phi/2)
  Real half_sin = sin(r.phase / 2L);
  Real dm1 = r.abs_det - Real(1L, prec);
  r.distance_to_one = sqrt(dm1 * dm1 + r.abs_det * half_sin * half_sin * 4L);
  return r;
}

SeriesValue dirac_spectral_series(int n, const Real& s, Precision prec, double tolerance) {
  require_dimension(n, "dirac_spectral_series");
  Real two_s = s * 2L;
  if (!(two_s > Real(static_cast<long>(n), 64))) throw std::domain_error("dirac_spectral_series: divergent for 2s <= n");
  const Rational mult(Integer(1) << (n / 2 + 1));
  auto b = barnes::barnes_series(n, fraction(n, 2), two_s, prec, tolerance / mult.get_d());
  return {b.value * mult, b.error_bound * mult};
}

BoundSequences bound_sequences(int k_max, Precision prec) {
  if (k_max < 2) throw std::invalid_argument("bound_sequences: k_max must be >= 2");
  const Precision wp = prec + 32;
  BoundSequences out;
  Real two_pi = const_pi(wp) * 2L;
  Real inv_sq = Real(1L, wp) / (two_pi * two_pi);
  Real c_r = special::zeta_bound_constant(wp);
  Real c_tilde = max(const_log2(wp), c_r / 2L);
  for (int k = 1; k <= k_max; ++k) {
    // A(k) = 2^{k+2}/(2k-1)! (-1)^{k+1} sum d[a] (-1)^a (2 pi)^{-2a-2} (2a+1)!
    const auto& d = coeffs::dirac_coeffs_even(k).coeffs;
    Real a_sum(wp);
    Real scale = inv_sq;
    for (int a = 0; a < k; ++a) {
      Rational c = d[static_cast<std::size_t>(a)] * Rational(factorial(static_cast<unsigned long>(2 * a + 1)));
      if ((a + k + 1) % 2 == 1) c = -c;
      a_sum += scale * c;
      scale *= inv_sq;
    }
    a_sum *= power_over_factorial(k + 2, 2 * k - 1);

    // B(k) = C~ 2^{k+1}/(2k-2)! (-1)^{k-1} sum e[a] (-1)^a (2 pi)^{-2a} (2a)!
    const auto& e = coeffs::dirac_coeffs_odd(k).coeffs;
    Real b_sum(wp);
    scale = Real(1L, wp);
    for (int a = 0; a < k; ++a) {
      Rational c = e[static_cast<std::size_t>(a)] * Rational(factorial(static_cast<unsigned long>(2 * a)));
      if ((a + k - 1) % 2 == 1) c = -c;
      b_sum += scale * c;
      scale *= inv_sq;
    }
    b_sum *= power_over_factorial(k + 1, 2 * k - 2);
    b_sum *= c_tilde;

    // k = 1 is an equality; allow for rounding.
    const Real round_up = Real(1L, wp) + pow2(-static_cast<long>(prec), wp);
    out.zeta_zero_within.push_back(abs(dirac_zeta_zero(2 * k, wp)) <= c_r * a_sum * round_up);
    out.zeta_prime_within.push_back(k < 2 || abs(dirac_zeta_prime_zero(2 * k - 1, wp).value) <= b_sum * round_up);
    if (k > 1) {
      out.a_ratio.push_back((a_sum / out.a.back()).with_precision(prec));
      out.b_ratio.push_back((b_sum / out.b.back()).with_precision(prec));
    }
    out.a.push_back(a_sum.with_precision(prec));
    out.b.push_back(b_sum.with_precision(prec));
  }
  return out;
}

}  // namespace spheredet::dirac
