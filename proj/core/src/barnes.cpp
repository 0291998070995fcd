#include "spheredet/barnes.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include "spheredet/coeffs.hpp"
#include "spheredet/quadrature.hpp"
#include "spheredet/special_values.hpp"

namespace spheredet::barnes {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

class DecompositionMemo {
 public:
  const ShiftDecomposition& get(int n, const Rational& a) {
    const auto key = std::make_pair(n, a);
    {
      std::shared_lock lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return *it->second;
    }
    auto built = std::make_unique<ShiftDecomposition>(build(n, a));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = memo_.try_emplace(key, std::move(built));
    return *it->second;
  }

 private:
  static ShiftDecomposition build(int n, const Rational& a) {
    // prod_{j=1}^{n-1} (t - (a - j)) / (n-1)!, t = a + m
    std::vector<Rational> roots;
    roots.reserve(static_cast<std::size_t>(n - 1));
    for (int j = 1; j <= n - 1; ++j) roots.emplace_back(a - j);
    auto c = coeffs::expand_roots(roots);
    const Rational norm(factorial(static_cast<unsigned long>(n - 1)));
    for (auto& x : c) {
      x /= norm;
      x.canonicalize();
    }
    return {n, a, std::move(c)};
  }

  std::shared_mutex mutex_;
  std::map<std::pair<int, Rational>, std::unique_ptr<ShiftDecomposition>> memo_;
};

DecompositionMemo& decomposition_memo() {
  static DecompositionMemo memo;
  return memo;
}

double log2_abs(const Rational& q) {
  if (q == 0) return -HUGE_VAL;
  return Real(q, 64).log2_abs();
}

BarnesEval prime_zero_once(int n, const Rational& a, const Rational& hurwitz_shift, Precision prec) {
  const auto& dec = shift_decompose(n, a);
  const std::size_t count = dec.coeffs.size();
  const double log2_terms = std::log2(static_cast<double>(count) + 1.0);
  std::vector<double> tol(count);
  for (std::size_t r = 0; r < count; ++r) {
    const double lc = log2_abs(dec.coeffs[r]);
    // Zero coefficients never reach the sum; leave their entries unconstrained.
    tol[r] = std::isfinite(lc) ? -static_cast<double>(prec) - log2_terms - lc - 2.0 : 1.0e6;
  }
  const Precision min_prec = cancellation_guard(n, prec);
  auto values = special::hurwitz_prime_neg_batch(hurwitz_shift, tol, min_prec);
  const Precision wp = values.front().plan.working_precision;

  Real acc(wp);
  Real err(64);
  Real magnitude(64);
  for (std::size_t r = 0; r < count; ++r) {
    if (dec.coeffs[r] == 0) continue;
    Real term = values[r].value * dec.coeffs[r];
    magnitude += abs(term).with_precision(64);
    acc += term;
    err += abs(Real(dec.coeffs[r], 64)) * values[r].error;
  }
  // Rounding in the final accumulation.
  err += magnitude * pow2(-static_cast<long>(wp) + static_cast<long>(std::ceil(log2_terms)) + 2, 64);

  BarnesEval out;
  out.order = n;
  out.shift = a;
  out.s = Real(0L, 64);
  out.method = Method::HurwitzDecomp;
  out.value = std::move(acc);
  out.error_bound = std::move(err);
  out.rigorous = true;
  out.precision = wp;
  return out;
}

BarnesEval confirm_by_refinement(int n, const Rational& a, const Rational& hurwitz_shift, Precision prec,
                                 Confirm confirm) {
  BarnesEval first = prime_zero_once(n, a, hurwitz_shift, prec);
  if (confirm == Confirm::No) return first;
  for (int attempt = 0; attempt < 4; ++attempt) {
    BarnesEval finer = prime_zero_once(n, a, hurwitz_shift, prec + 32 + 32 * attempt);
    Real diff = abs(first.value - finer.value);
    if (diff <= first.error_bound) return first;
    first = std::move(finer);
  }
  throw std::runtime_error("barnes_prime_zero: precision refinement did not stabilise (n=" + std::to_string(n) +
                           ")");
}

using quad::Complex;

// Shared box-contour driver. Returns \oint g(z) dz along the Hankel-style
// path: in from -inf above the cut, down the right edge, out below it.
struct ContourIntegral {
  Complex value;
  double error;
};

template <typename G>
ContourIntegral box_integral(G&& g, double right_edge, double decay_rate, const ContourSpec& spec) {
  // Horizontal sides are truncated where e^{decay_rate * x} has died out.
  double x_min = -10.0;
  auto tail_bound = [decay_rate](double x) {
    const double ax = std::fabs(x);
    return std::exp(decay_rate * x) * (std::log(ax) * std::log(ax) + 4.0 * std::log(ax) + 8.0) / decay_rate;
  };
  while (tail_bound(x_min) > 1e-18) x_min *= 1.25;

  const double h = M_PI / 2.0;
  quad::Options opts;
  opts.abs_tol = spec.tolerance;
  opts.rel_tol = spec.tolerance;
  opts.max_evaluations = spec.node_budget;

  // Top (left to right) minus bottom (left to right), then the edge downwards.
  auto horizontal = [&](double x) { return g(Complex(x, h)) - g(Complex(x, -h)); };
  auto vertical = [&](double y) { return -g(Complex(right_edge, y)) * Complex(0.0, 1.0); };

  // Breakpoints at unit spacing keep the slowly decaying far field cheap.
  std::vector<double> pts;
  for (double x = x_min; x < right_edge; x += std::max(1.0, (right_edge - x_min) / 64.0)) pts.push_back(x);
  pts.push_back(right_edge);
  auto hres = quad::integrate_pieces(horizontal, pts, opts);
  auto vres = quad::integrate(vertical, -h, h, opts);
  if (!hres.converged) throw quad::NonConvergence("contour quadrature: horizontal sides did not converge", hres);
  if (!vres.converged) throw quad::NonConvergence("contour quadrature: vertical side did not converge", vres);
  return {hres.value + vres.value, hres.error + vres.error + 2.0 * tail_bound(x_min)};
}

// e^{az} (1 - e^z)^{-n}, evaluated in the form that avoids overflow.
Complex barnes_kernel(Complex z, double a, int n) {
  if (z.real() <= 0.0) return std::exp(a * z - static_cast<double>(n) * std::log(1.0 - std::exp(z)));
  return std::exp((a - n) * z - static_cast<double>(n) * std::log(std::exp(-z) - 1.0));
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::Series:
      return "series";
    case Method::HurwitzDecomp:
      return "hurwitz-decomposition";
    case Method::Contour:
      return "contour";
  }
  return "?";
}

ContourSpec default_contour(int n, const Rational& a) {
  ContourSpec spec;
  const bool far_shift = (a == n - 1 || a == n) && n >= 4;
  spec.right_edge = far_shift ? std::log(static_cast<double>(n)) : std::log(4.0);
  return spec;
}

Precision cancellation_guard(int n, Precision prec) {
  const double bits = n >= 2 ? std::ceil(1.2 * n * std::log2(static_cast<double>(n))) + 64.0 : 64.0;
  return std::max<Precision>(prec, static_cast<Precision>(bits));
}

const ShiftDecomposition& shift_decompose(int n, const Rational& a) {
  if (n < 1) throw std::invalid_argument("shift_decompose: order must be >= 1");
  return decomposition_memo().get(n, a);
}

BarnesEval barnes_series(int n, const Rational& a, const Real& s, Precision prec, double tolerance) {
  if (n < 1) throw std::invalid_argument("barnes_series: order must be >= 1");
  if (a < 0) throw std::invalid_argument("barnes_series: shift must be >= 0");
  const double sd = s.to_double();
  if (!(sd > n)) throw std::domain_error("barnes_series: divergent for s <= n");

  // The tail integral is an alternating polynomial sum; guard against its cancellation.
  const Precision wp = cancellation_guard(n, prec) + 32;
  Real sw = s.with_precision(wp);
  Real neg_s = -sw;
  Real aw(a, wp);
  const long first = (a == 0) ? 1 : 0;
  const double ad = a.get_d();
  // f(x) = C(x+n-1, n-1)(x+a)^-s decreases once x exceeds this.
  const double monotone_from = ((n - 1) * ad - sd) / (sd - n + 1);
  const auto& dec = shift_decompose(n, a);

  // int_M^inf f = sum_r c_r (a+M)^{r+1-s} / (s-r-1), exact in the polynomial part.
  auto tail_integral = [&](long big_m) {
    Real base = aw + Real(big_m, wp);
    Real acc(wp);
    for (std::size_t r = 0; r < dec.coeffs.size(); ++r) {
      if (dec.coeffs[r] == 0) continue;
      Real expo = Real(static_cast<long>(r) + 1, wp) - sw;
      acc += pow(base, expo) * dec.coeffs[r] / (sw - Real(static_cast<long>(r) + 1, wp));
    }
    return acc;
  };

  Real partial(wp);
  Real binom(binomial(static_cast<unsigned long>(first + n - 1), static_cast<unsigned long>(n - 1)), wp);
  long m = first;
  long target = std::max<long>(64, static_cast<long>(std::ceil(monotone_from)) + 2);
  Real estimate(wp);
  Real error(64);
  for (;;) {
    for (; m < target; ++m) {
      partial += binom * pow(aw + Real(m, wp), neg_s);
      binom *= (m + n);
      binom /= (m + 1);
    }
    // f decreasing on [M, inf): int_M^inf f <= sum_{k>=M} f(k) <= f(M) + int_M^inf f.
    Real f_m = binom * pow(aw + Real(target, wp), neg_s);
    Real lower = tail_integral(target);
    estimate = partial + lower + f_m / 2L;
    error = (f_m / 2L).with_precision(64);
    if (error.to_double() <= tolerance || target > 4000000) break;
    target *= 2;
  }
  error += abs(estimate).with_precision(64) * pow2(-static_cast<long>(prec), 64);

  BarnesEval out;
  out.order = n;
  out.shift = a;
  out.s = s;
  out.method = Method::Series;
  out.value = estimate.with_precision(prec);
  out.error_bound = error;
  out.rigorous = true;
  out.precision = wp;
  return out;
}

BarnesEval barnes_continued(int n, const Rational& a, const Real& s, Precision prec) {
  if (a <= 0) throw std::invalid_argument("barnes_continued: shift must be positive");
  if (mpfr_integer_p(s.raw()) && s.sign() > 0 && s <= Real(static_cast<long>(n), 64)) {
    throw special::PoleError("barnes_continued: pole at s = " + std::to_string(static_cast<long>(s.to_double())));
  }
  const auto& dec = shift_decompose(n, a);
  double max_log2 = 0.0;
  for (const auto& c : dec.coeffs) max_log2 = std::max(max_log2, log2_abs(c));
  const Precision wp = cancellation_guard(n, prec) + static_cast<Precision>(std::ceil(max_log2)) + 16;

  Real acc(wp);
  Real err(64);
  Real aw(a, wp);
  for (std::size_t r = 0; r < dec.coeffs.size(); ++r) {
    if (dec.coeffs[r] == 0) continue;
    Real sr = s.with_precision(wp) - Real(static_cast<long>(r), wp);
    auto h = special::hurwitz(sr, aw, wp);
    acc += h.value * dec.coeffs[r];
    err += abs(Real(dec.coeffs[r], 64)) * (h.error + abs(h.value).with_precision(64) * pow2(-static_cast<long>(wp), 64));
  }
  BarnesEval out;
  out.order = n;
  out.shift = a;
  out.s = s;
  out.method = Method::HurwitzDecomp;
  out.value = std::move(acc);
  out.error_bound = std::move(err);
  out.rigorous = true;
  out.precision = wp;
  return out;
}

BarnesEval barnes_prime_zero(int n, const Rational& a, Precision prec, Confirm confirm) {
  if (n < 1) throw std::invalid_argument("barnes_prime_zero: order must be >= 1");
  if (a <= 0) throw std::invalid_argument("barnes_prime_zero: shift must be positive (use barnes_prime_zero_a0)");
  return confirm_by_refinement(n, a, a, prec, confirm);
}

BarnesEval barnes_prime_zero_a0(int n, Precision prec, Confirm confirm) {
  if (n < 1) throw std::invalid_argument("barnes_prime_zero_a0: order must be >= 1");
  // sum_{m>=1} C(m+n-1,n-1) m^-s = sum_r c_r(0) zeta_R(s-r) = sum_r c_r(0) zeta_H(s-r, 1)
  return confirm_by_refinement(n, Rational(0), Rational(1), prec, confirm);
}

BarnesEval barnes_contour_prime_zero(int n, const Rational& a, const ContourSpec& spec) {
  if (a <= 0) throw std::invalid_argument("barnes_contour_prime_zero: shift must be positive");
  if (!(spec.right_edge > 0.0)) throw std::invalid_argument("barnes_contour_prime_zero: box must enclose z = 0");
  const double ad = a.get_d();
  auto g = [ad, n](Complex z) { return barnes_kernel(z, ad, n) * (std::log(z) + kEulerGamma) / z; };
  auto integral = box_integral(g, spec.right_edge, ad, spec);
  const Complex value = Complex(0.0, 1.0) / (2.0 * M_PI) * integral.value;

  BarnesEval out;
  out.order = n;
  out.shift = a;
  out.s = Real(0L, 64);
  out.method = Method::Contour;
  out.value = Real(value.real(), 64);
  out.error_bound = Real(integral.error / (2.0 * M_PI) + std::fabs(value.imag()), 64);
  out.rigorous = false;
  out.precision = 53;
  return out;
}

BarnesEval barnes_contour_prime_zero_a0(int n, const ContourSpec& spec) {
  if (n < 2) throw std::invalid_argument("barnes_contour_prime_zero_a0: order must be >= 2");
  BarnesEval at_one = barnes_contour_prime_zero(n, Rational(1), spec);
  auto g = [n](Complex z) {
    const Complex lz = std::log(z);
    return barnes_kernel(z, 1.0, n) * (kEulerGamma * lz + 0.5 * lz * lz);
  };
  auto integral = box_integral(g, spec.right_edge, 1.0, spec);
  const Complex value = static_cast<double>(n - 1) / Complex(0.0, 2.0 * M_PI) * integral.value;

  BarnesEval out = at_one;
  out.shift = 0;
  out.value = Real(at_one.value.to_double() + value.real(), 64);
  out.error_bound = Real(at_one.error_bound.to_double() + (n - 1) * integral.error / (2.0 * M_PI) + std::fabs(value.imag()), 64);
  return out;
}

Rational barnes_residue(int n, const Rational& a, int k) {
  if (k < 1 || k > n) throw std::out_of_range("barnes_residue: pole index must lie in 1..n");
  if (a <= 0) throw std::invalid_argument("barnes_residue: shift must be positive");
  return shift_decompose(n, a).coeffs[static_cast<std::size_t>(k - 1)];
}

}  // namespace spheredet::barnes
