#include "spheredet/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spheredet/dirac.hpp"
#include "spheredet/laplace.hpp"
#include "spheredet/special_values.hpp"

namespace spheredet::asymptotics {

namespace {

constexpr double kPi = 3.14159265358979323846;

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

double TestFunction::value(double x) const {
  const double d = x * x + c;
  const double l = 0.5 * std::log(d);
  return ipow(x, p) * ipow(l, q) / ipow(d, m);
}

double TestFunction::derivative(double x) const {
  const double d = x * x + c;
  const double l = 0.5 * std::log(d);
  const double dm = ipow(d, m);
  double out = 0.0;
  if (p > 0) out += p * ipow(x, p - 1) * ipow(l, q) / dm;
  if (q > 0) out += q * ipow(x, p) * ipow(l, q - 1) * (x / d) / dm;
  if (m > 0) out -= 2.0 * m * ipow(x, p + 1) * ipow(l, q) / (dm * d);
  return out;
}

const std::vector<TestFunction>& catalog() {
  static const std::vector<TestFunction> entries = [] {
    const double c = kPi * kPi / 4.0;
    return std::vector<TestFunction>{
        {"constant", 0, 0, 0, 0.0, 0.0},
        {"phi1", 1, 1, 1, c, 1.0},
        {"inverse-quadratic", 0, 0, 1, c, 0.0},
        {"log-over-quadratic", 0, 1, 1, c, 0.0},
        {"linear-over-quadratic", 1, 0, 1, c, 0.0},
    };
  }();
  return entries;
}

Certificate certify_monotone(const TestFunction& phi, double a, double b, int grid) {
  Certificate cert;
  cert.min_slack = HUGE_VAL;
  for (int i = 0; i <= grid; ++i) {
    const double x = a + (b - a) * i / grid;
    const double v = phi.value(x);
    const double s = phi.derivative(x) + v;
    if (v < 0.0) {
      cert.min_slack = -HUGE_VAL;
      cert.at = x;
      break;
    }
    if (s < cert.min_slack) {
      cert.min_slack = s;
      cert.at = x;
    }
  }
  cert.holds = cert.min_slack >= 0.0;
  return cert;
}

LemmaInstance make_instance(int n, double a, double b, const TestFunction& phi) {
  if (!(a >= 0.0 && a < b)) throw std::invalid_argument("lemma instance: need 0 <= a < b");
  if (n < 1) throw std::invalid_argument("lemma instance: n must be positive");
  LemmaInstance inst;
  inst.n = n;
  inst.a = a;
  inst.b = b;
  inst.phi = phi;
  inst.s_a = std::atan(std::exp(-a));
  inst.s_b = std::atan(std::exp(-b));
  inst.n_ab = static_cast<long>(std::floor(n / kPi * (inst.s_a - inst.s_b)));
  return inst;
}

LemmaInstance lemma_bound_check(LemmaInstance inst, double quad_tol) {
  const int n = inst.n;
  if (n < static_cast<int>(std::ceil(kPi / inst.s_a))) {
    throw std::invalid_argument("lemma_bound_check: n below ceil(pi / s_a)");
  }
  inst.certificate = certify_monotone(inst.phi, inst.a, inst.b);
  if (!inst.certificate.holds) {
    throw std::invalid_argument("lemma_bound_check: e^x phi(x) is not increasing for " + inst.phi.name);
  }

  // Half-period breakpoints x_k = log(1/tan(s_b + k pi/n)), k = n_ab .. 0.
  std::vector<double> pts{inst.a};
  for (long k = inst.n_ab; k >= 1; --k) {
    const double x = std::log(1.0 / std::tan(inst.s_b + k * kPi / n));
    pts.push_back(std::max(x, inst.a));
  }
  pts.push_back(inst.b);
  inst.pieces = static_cast<long>(pts.size()) - 1;

  const TestFunction& phi = inst.phi;
  auto f = [n, &phi](double x) {
    const quad::Complex w(-1.0, std::exp(-x));
    return std::exp(-static_cast<double>(n) * std::log(w)) * phi.value(x);
  };
  quad::Options opts;
  opts.abs_tol = quad_tol;
  opts.rel_tol = quad_tol;
  opts.max_evaluations = 4000000;
  auto res = quad::integrate_pieces(f, pts, opts);
  if (!res.converged) throw quad::NonConvergence("lemma_bound_check: quadrature did not converge", res);
  inst.integral = res.value;
  inst.quad_error = res.error;

  // max of phi(log(1/tan u)) over u in [s_b, s_b + pi/n], clipped to [s_b, s_a].
  const double u_hi = std::min(inst.s_b + kPi / n, inst.s_a);
  double peak = 0.0;
  const int samples = 4000;
  for (int i = 0; i <= samples; ++i) {
    const double u = inst.s_b + (u_hi - inst.s_b) * i / samples;
    peak = std::max(peak, phi.value(std::log(1.0 / std::tan(u))));
  }
  inst.bound = 2.0 * kPi / (n * std::tan(inst.s_b)) * peak;
  inst.slack = 10.0 * inst.quad_error;
  inst.margin = inst.bound + inst.slack - std::abs(inst.integral);
  inst.holds = inst.margin >= 0.0;
  return inst;
}

std::vector<LemmaInstance> lemma_battery(const std::vector<int>& ns, double quad_tol) {
  std::vector<LemmaInstance> out;
  for (int n : ns) {
    for (const auto& phi : catalog()) {
      out.push_back(lemma_bound_check(make_instance(n, phi.default_a, std::log(static_cast<double>(n)), phi), quad_tol));
    }
  }
  return out;
}

NoOscillationRow no_oscillation_integral(double n) {
  if (n < 16.0) throw std::invalid_argument("no_oscillation_integral: n must be >= 16");
  NoOscillationRow row;
  row.n = n;
  const double expo = -(n + 1.0) / 2.0;
  auto f = [expo](double x) {
    return quad::Complex(std::exp(expo * std::log1p(std::exp(-2.0 * x))) * std::log(x) / x, 0.0);
  };
  auto res = quad::integrate(f, 0.5 * std::log(n), std::log(n), {1e-13, 1e-12, 400000});
  if (!res.converged) throw quad::NonConvergence("no_oscillation_integral: quadrature did not converge", res);
  row.value = res.value.real();
  row.error = res.error;
  const double ll = std::log(std::log(n));
  row.lower = std::log(2.0) / 4.0 * (ll - 0.5 * std::log(2.0));
  row.upper = 0.5 * ll * ll;
  row.within = row.lower <= row.value && row.value <= row.upper;
  return row;
}

std::vector<NoOscillationRow> no_oscillation_divergence_check(const std::vector<double>& ns) {
  std::vector<NoOscillationRow> out;
  for (double n : ns) out.push_back(no_oscillation_integral(n));
  return out;
}

Mod4Report mod4_pattern_scan(int n_lo, int n_hi, Precision prec) {
  Mod4Report rep;
  for (int n = std::max(2, n_lo); n <= n_hi; ++n) {
    auto r = dirac::dirac_det(n, prec);
    PatternRow row;
    row.n = n;
    row.det_below_one = r.abs_det < Real(1L, 64);
    row.phase_sign = r.phase.sign();
    switch (n % 4) {
      case 0:
        row.expected = row.det_below_one && row.phase_sign > 0;
        break;
      case 1:
        row.expected = !row.det_below_one && row.phase_sign == 0;
        break;
      case 2:
        row.expected = !row.det_below_one && row.phase_sign < 0;
        break;
      default:
        row.expected = row.det_below_one && row.phase_sign == 0;
        break;
    }
    // |det| = 1 exactly would satisfy neither side.
    if (r.abs_det == Real(1L, 64)) row.expected = false;
    if (!row.expected) rep.violations.push_back(n);
    rep.rows.push_back(row);
  }
  return rep;
}

RateFit rate_fit(const std::vector<FitPoint>& seq, FitModel model, double lo, double hi) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : seq) {
    if (p.n < lo || p.n > hi) continue;
    if (!(std::fabs(p.value) > 0.0) || !std::isfinite(p.value)) continue;
    xs.push_back(model == FitModel::Exponential ? p.n : std::log(p.n));
    ys.push_back(std::log(std::fabs(p.value)));
  }
  if (xs.size() < 4) throw std::invalid_argument("rate_fit: fewer than 4 data points in the window");
  const double k = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("rate_fit: degenerate window");
  RateFit fit;
  fit.model = model;
  fit.window_lo = lo;
  fit.window_hi = hi;
  fit.points = xs.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    fit.residuals.push_back(r);
    ss += r * r;
  }
  fit.residual_norm = std::sqrt(ss / k);
  return fit;
}

std::vector<LimitRow> limit_report(LimitTarget target, const std::vector<int>& ns, Precision prec) {
  std::vector<LimitRow> rows;
  const double one_plus_log_two_pi = 1.0 + special::log_two_pi(64).to_double();
  for (int n : ns) {
    LimitRow row;
    row.n = n;
    switch (target) {
      case LimitTarget::Dirac: {
        auto r = dirac::dirac_det(n, prec);
        row.value = r.abs_det.to_double();
        row.limit = 1.0;
        row.gap = r.distance_to_one.to_double();
        break;
      }
      case LimitTarget::Yamabe: {
        auto r = laplace::laplace_det(laplace::make_params(n, laplace::Operator::Yamabe), prec);
        row.value = r.det.to_double();
        row.limit = 1.0;
        row.gap = std::fabs((r.det - Real(1L, r.det.precision())).to_double());
        break;
      }
      case LimitTarget::OrdinaryRescaled: {
        auto r = laplace::rescaled_det(n, prec);
        row.value = r.rescaled_zeta_prime_zero.to_double();
        row.limit = one_plus_log_two_pi;
        row.gap = std::fabs(row.value - row.limit);
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace spheredet::asymptotics
