// Euler-Maclaurin evaluation of the Hurwitz zeta function and its
// s-derivative, with a planner that picks the direct-sum length N and the
// number of Bernoulli corrections M from the remainder bound.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "spheredet/special_values.hpp"

namespace spheredet::special {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2TwoPi = std::log2(2.0 * M_PI);
// 4 * zeta(2) bounds 4 * zeta(2M) for every M >= 1.
const double kLog2RemainderConst = std::log2(4.0 * 1.6449340668482264);
constexpr long kMaxCorrections = 40000;

double log2_add(double x, double y) {
  if (x == -kInf) return y;
  if (y == -kInf) return x;
  const double hi = std::max(x, y);
  const double lo = std::min(x, y);
  return hi + std::log2(1.0 + std::exp2(lo - hi));
}

double log2_factorial(double n) { return std::lgamma(n + 1.0) / M_LN2; }

struct Plan {
  long n = -1;
  long m = 0;
  double cost = kInf;
};

// Running log2 of |(s)_{2M}| and |d/ds (s)_{2M}| as M grows.
class PochhammerTracker {
 public:
  explicit PochhammerTracker(double s) : s_(s) {}

  void extend_to(long count) {
    for (; count_ < count; ++count_) {
      const double t = s_ + static_cast<double>(count_);
      if (t == 0.0) {
        zero_seen_ = true;
      } else {
        log_nonzero_ += std::log2(std::fabs(t));
        inv_sum_ += 1.0 / std::fabs(t);
      }
    }
  }

  double value_log2() const { return zero_seen_ ? -kInf : log_nonzero_; }
  double deriv_log2() const {
    if (zero_seen_) return log_nonzero_;
    return log_nonzero_ + std::log2(inv_sum_);
  }

 private:
  double s_;
  long count_ = 0;
  bool zero_seen_ = false;
  double log_nonzero_ = 0.0;
  double inv_sum_ = 0.0;
};

// log2 of the remainder bound after M corrections at X = a + N.
double remainder_log2(double sigma, double x, long m, const PochhammerTracker& poch, bool derivative) {
  const double q = sigma + 2.0 * m - 1.0;
  const double base = kLog2RemainderConst - 2.0 * m * kLog2TwoPi + (1.0 - sigma - 2.0 * m) * std::log2(x);
  if (!derivative) return base + poch.value_log2() - std::log2(q);
  const double lx = std::fabs(std::log(x));
  double t = poch.deriv_log2() - std::log2(q);
  t = log2_add(t, poch.value_log2() + std::log2(lx / q + 1.0 / (q * q)));
  return base + t;
}

Plan plan_single(double sigma, double a, double tol_log2, bool derivative) {
  Plan best;
  const long m_min = std::max(1L, static_cast<long>(std::floor((1.0 - sigma) / 2.0)) + 1);
  for (long n = 0; n <= (1L << 22); n = (n == 0 ? 1 : 2 * n)) {
    const double x = a + static_cast<double>(n);
    if (x < 0.5) continue;
    PochhammerTracker poch(sigma);
    double best_here = kInf;
    for (long m = m_min; m <= kMaxCorrections; ++m) {
      poch.extend_to(2 * m);
      const double b = remainder_log2(sigma, x, m, poch, derivative);
      if (b <= tol_log2) {
        const double cost = 6.0 * static_cast<double>(n) + 2.0 * static_cast<double>(m);
        if (cost < best.cost) best = {n, m, cost};
        break;
      }
      best_here = std::min(best_here, b);
      if (b > best_here + 8.0) break;
    }
    if (best.n >= 0 && 6.0 * static_cast<double>(n) > best.cost) break;
  }
  if (best.n < 0) throw std::runtime_error("Euler-Maclaurin planner: tolerance not reachable");
  return best;
}

// Remainder bound for the derivative at s = -r with 2M > r + 1.
double remainder_neg_int_log2(long r, double x, long m) {
  const double q = 2.0 * m - static_cast<double>(r) - 1.0;
  return kLog2RemainderConst - 2.0 * m * kLog2TwoPi + (static_cast<double>(r) + 1.0 - 2.0 * m) * std::log2(x) +
         log2_factorial(static_cast<double>(r)) + log2_factorial(q) - std::log2(q);
}

Plan plan_batch(double a, std::span<const double> tol_log2) {
  const long r_max = static_cast<long>(tol_log2.size()) - 1;
  const long m_min = (r_max + 1) / 2 + 1;
  Plan best;
  for (long n = 0; n <= (1L << 20); n = (n == 0 ? 1 : 2 * n)) {
    const double x = a + static_cast<double>(n);
    if (x < 0.5) continue;
    double worst_prev = kInf;
    for (long m = m_min; m <= kMaxCorrections; ++m) {
      double worst = -kInf;
      for (long r = 0; r <= r_max; ++r) {
        worst = std::max(worst, remainder_neg_int_log2(r, x, m) - tol_log2[static_cast<std::size_t>(r)]);
      }
      if (worst <= 0.0) {
        const double rr = static_cast<double>(r_max + 1);
        const double cost = static_cast<double>(n) * (2.0 * rr + 40.0) + 7.0 * static_cast<double>(m) * rr;
        if (cost < best.cost) best = {n, m, cost};
        break;
      }
      if (worst > worst_prev + 8.0) break;
      worst_prev = std::min(worst_prev, worst);
    }
    if (best.n >= 0 && static_cast<double>(n) * (2.0 * static_cast<double>(r_max + 1) + 40.0) > best.cost) break;
  }
  if (best.n < 0) throw std::runtime_error("Euler-Maclaurin planner: tolerance not reachable");
  return best;
}

// B_2j / (2j)! as a Real.
Real bernoulli_weight(int j, Precision wp) {
  Rational w = bernoulli(2 * j) / Rational(factorial(static_cast<unsigned long>(2 * j)));
  return Real(w, wp);
}

Certified hurwitz_impl(const Real& s, const Real& a, Precision prec, bool derivative) {
  if (a.sign() <= 0) throw std::invalid_argument("hurwitz: shift a must be positive");
  if (s == Real(1L, s.precision())) throw PoleError("hurwitz: pole at s = 1");

  const double sigma = s.to_double();
  const double ad = a.to_double();
  const double log2a = std::log2(ad);
  double scale = -sigma * log2a;
  if (std::fabs(sigma - 1.0) > 1e-300) scale = std::max(scale, (1.0 - sigma) * log2a - std::log2(std::fabs(sigma - 1.0)));
  const double tol = -static_cast<double>(prec) + scale - 4.0;

  const Plan plan = plan_single(sigma, ad, tol, derivative);
  const double x_d = ad + static_cast<double>(plan.n);
  double magnitude = std::max(scale, (1.0 - sigma) * std::log2(x_d) - std::log2(std::max(std::fabs(sigma - 1.0), 1e-30)));
  magnitude = std::max(magnitude, -sigma * std::log2(std::min(ad, x_d)));
  if (derivative) magnitude += std::log2(2.0 + std::fabs(std::log(x_d)));
  const double ops = std::log2(static_cast<double>(plan.n + 8 * plan.m + 16));
  const Precision wp =
      std::max<Precision>(prec + 16, static_cast<Precision>(std::ceil(magnitude - tol + ops)) + 16);

  Real sw = s.with_precision(wp);
  Real aw = a.with_precision(wp);
  Real neg_s = -sw;
  Real acc(wp);
  for (long k = 0; k < plan.n; ++k) {
    Real t = aw + Real(k, wp);
    Real term = pow(t, neg_s);
    if (derivative) term *= log(t);
    acc += term;
  }
  if (derivative) acc = -acc;

  Real x = aw + Real(plan.n, wp);
  Real lx = log(x);
  Real one(1L, wp);
  Real s_minus_1 = sw - one;
  Real x_pow = pow(x, neg_s);  // X^{-s}
  Real x_pow1 = x_pow * x;     // X^{1-s}
  if (!derivative) {
    acc += x_pow1 / s_minus_1;
    acc += x_pow / 2L;
  } else {
    acc -= lx * x_pow1 / s_minus_1;
    acc -= x_pow1 / (s_minus_1 * s_minus_1);
    acc -= lx * x_pow / 2L;
  }

  Real inv_x2 = one / (x * x);
  Real p = x_pow / x;  // X^{-s-2j+1} at j = 1
  Real t = sw;         // (s)_{2j-1}
  Real tp = one;       // d/ds (s)_{2j-1}
  for (long j = 1; j <= plan.m; ++j) {
    Real w = bernoulli_weight(static_cast<int>(j), wp);
    if (!derivative) {
      acc += w * t * p;
    } else {
      acc += w * p * (tp - t * lx);
    }
    Real f1 = sw + Real(2 * j - 1, wp);
    Real f2 = sw + Real(2 * j, wp);
    tp = tp * f1 * f2 + t * (f1 + f2);
    t = t * f1 * f2;
    p *= inv_x2;
  }

  PochhammerTracker poch(sigma);
  poch.extend_to(2 * plan.m);
  const double rem = remainder_log2(sigma, x_d, plan.m, poch, derivative);
  const double err_log2 = log2_add(rem, magnitude - static_cast<double>(wp) + ops);
  return {acc, pow2(static_cast<long>(std::ceil(err_log2)), 64), {plan.n, plan.m, wp}};
}

}  // namespace

Certified hurwitz(const Real& s, const Real& a, Precision prec) { return hurwitz_impl(s, a, prec, false); }

Certified hurwitz(const Real& s, const Rational& a, Precision prec) {
  return hurwitz_impl(s, Real(a, prec + 64), prec, false);
}

Certified hurwitz_prime(const Real& s, const Real& a, Precision prec) { return hurwitz_impl(s, a, prec, true); }

Certified hurwitz_prime_at(int r, const Rational& a, Precision prec) {
  if (r > 0) throw std::invalid_argument("hurwitz_prime_at: r must be <= 0");
  if (a <= 0) throw std::invalid_argument("hurwitz_prime_at: shift a must be positive");
  return hurwitz_impl(Real(static_cast<long>(r), prec), Real(a, prec + 64), prec, true);
}

std::vector<Certified> hurwitz_prime_neg_batch(const Rational& a, std::span<const double> tol_log2,
                                               Precision min_prec) {
  if (a <= 0) throw std::invalid_argument("hurwitz_prime_neg_batch: shift a must be positive");
  if (tol_log2.empty()) return {};
  const long r_max = static_cast<long>(tol_log2.size()) - 1;
  const double ad = a.get_d();
  const Plan plan = plan_batch(ad, tol_log2);
  const double x_d = ad + static_cast<double>(plan.n);
  const double lx_d = std::log2(2.0 + std::fabs(std::log(x_d)));
  const double ops = std::log2(static_cast<double>(plan.n + 8 * plan.m + 16));

  std::vector<double> magnitude(static_cast<std::size_t>(r_max + 1));
  double need = 0.0;
  for (long r = 0; r <= r_max; ++r) {
    const double mag = (static_cast<double>(r) + 1.0) * std::log2(std::max(x_d, 1.0)) + lx_d;
    magnitude[static_cast<std::size_t>(r)] = mag;
    need = std::max(need, mag - tol_log2[static_cast<std::size_t>(r)] + ops);
  }
  const Precision wp = std::max<Precision>(min_prec, static_cast<Precision>(std::ceil(need)) + 16);

  std::vector<Real> acc(static_cast<std::size_t>(r_max + 1), Real(wp));
  Real aw(a, wp);
  for (long k = 0; k < plan.n; ++k) {
    Real t = aw + Real(k, wp);
    Real lt = log(t);
    Real pw(1L, wp);
    for (long r = 0; r <= r_max; ++r) {
      acc[static_cast<std::size_t>(r)] -= lt * pw;
      pw *= t;
    }
  }

  Real x = aw + Real(plan.n, wp);
  Real lx = log(x);
  Real one(1L, wp);
  {
    Real pw(1L, wp);  // X^r
    for (long r = 0; r <= r_max; ++r) {
      Real next = pw * x;  // X^{r+1}
      const long r1 = r + 1;
      Real integral = next * (lx / r1 - Real(Rational(1, r1 * r1), wp));
      acc[static_cast<std::size_t>(r)] += integral - lx * pw / 2L;
      pw = std::move(next);
    }
  }

  std::vector<Real> weights;
  weights.reserve(static_cast<std::size_t>(plan.m));
  for (long j = 1; j <= plan.m; ++j) weights.push_back(bernoulli_weight(static_cast<int>(j), wp));
  Real inv_x2 = one / (x * x);
  Real x_pow = one / x;  // X^{r-1}
  for (long r = 0; r <= r_max; ++r) {
    Real p = x_pow;
    Real t(-r, wp);
    Real tp(1L, wp);
    Real& out = acc[static_cast<std::size_t>(r)];
    for (long j = 1; j <= plan.m; ++j) {
      out += weights[static_cast<std::size_t>(j - 1)] * p * (tp - t * lx);
      const long f1 = 2 * j - 1 - r;
      const long f2 = 2 * j - r;
      tp = tp * f1;
      tp *= f2;
      tp += t * (f1 + f2);
      t *= f1;
      t *= f2;
      p *= inv_x2;
    }
    x_pow *= x;
  }

  std::vector<Certified> result;
  result.reserve(acc.size());
  for (long r = 0; r <= r_max; ++r) {
    const double rem = remainder_neg_int_log2(r, x_d, plan.m);
    const double err_log2 = log2_add(rem, magnitude[static_cast<std::size_t>(r)] - static_cast<double>(wp) + ops);
    result.push_back({std::move(acc[static_cast<std::size_t>(r)]), pow2(static_cast<long>(std::ceil(err_log2)), 64),
                      {plan.n, plan.m, wp}});
  }
  return result;
}

}  // namespace spheredet::special
