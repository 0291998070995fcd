#pragma once

// Numerical checks of the large-n behaviour: an oscillatory integral bound
// (half-period cancellation), its non-oscillating counterpart, the Dirac
// sign pattern, log-linear rate fits and limit gaps.

#include <string>
#include <vector>

#include "spheredet/quadrature.hpp"
#include "spheredet/real.hpp"

namespace spheredet::asymptotics {

// phi(x) = x^p (log sqrt(x^2 + c))^q / (x^2 + c)^m
struct TestFunction {
  std::string name;
  int p = 0;
  int q = 0;
  int m = 0;
  double c = 0.0;
  // Left end of the default interval; the right end is log n.
  double default_a = 0.0;

  double value(double x) const;
  double derivative(double x) const;
};

const std::vector<TestFunction>& catalog();

// e^x phi(x) increasing on [a, b], checked as phi' + phi >= 0 on a dense grid
// including both ends.
struct Certificate {
  bool holds = false;
  double min_slack = 0.0;  // min of phi' + phi over the grid
  double at = 0.0;
};

Certificate certify_monotone(const TestFunction& phi, double a, double b, int grid = 20000);

struct LemmaInstance {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  TestFunction phi;
  double s_a = 0.0;  // atan(e^-a)
  double s_b = 0.0;  // atan(e^-b)
  long n_ab = 0;     // floor(n (s_a - s_b) / pi)
  long pieces = 0;   // half-period pieces integrated; n_ab + 1
  Certificate certificate;
  quad::Complex integral{};
  double quad_error = 0.0;
  double bound = 0.0;
  double slack = 0.0;   // 10 x quad_error
  double margin = 0.0;  // bound + slack - |integral|
  bool holds = false;
};

LemmaInstance make_instance(int n, double a, double b, const TestFunction& phi);

// Fills the integral of (i e^-x - 1)^-n phi(x) over [a, b], split at the
// half-periods of n atan(e^-x), and the bound 2 pi/(n tan s_b) max phi over
// the first half-period. Throws quad::NonConvergence on quadrature failure
// and std::invalid_argument when n < ceil(pi / s_a) or the certificate fails.
LemmaInstance lemma_bound_check(LemmaInstance inst, double quad_tol = 1e-12);

// The catalog at each n with b = log n.
std::vector<LemmaInstance> lemma_battery(const std::vector<int>& ns, double quad_tol = 1e-12);

struct NoOscillationRow {
  double n = 0.0;
  double value = 0.0;
  double error = 0.0;
  double lower = 0.0;  // (log 2 / 4)(log log n - log(2)/2)
  double upper = 0.0;  // (log log n)^2 / 2
  bool within = false;
};

// int_{log sqrt n}^{log n} (1 + e^{-2x})^{-(n+1)/2} log(x)/x dx, n >= 16.
NoOscillationRow no_oscillation_integral(double n);
std::vector<NoOscillationRow> no_oscillation_divergence_check(const std::vector<double>& ns);

struct PatternRow {
  int n = 0;
  bool det_below_one = false;
  int phase_sign = 0;
  bool expected = false;
};

struct Mod4Report {
  std::vector<PatternRow> rows;
  std::vector<int> violations;
};

// n = 0,1,2,3 mod 4: (|det|<1, phi>0), (|det|>1, phi=0), (|det|>1, phi<0), (|det|<1, phi=0).
Mod4Report mod4_pattern_scan(int n_lo, int n_hi, Precision prec);

enum class FitModel {
  Exponential,  // log|v| against n
  PowerLaw,     // log|v| against log n
};

struct FitPoint {
  double n;
  double value;
};

struct RateFit {
  FitModel model = FitModel::Exponential;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::size_t points = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual_norm = 0.0;  // root mean square
  std::vector<double> residuals;
};

// Least squares over the points whose n lies in [lo, hi]. Throws
// std::invalid_argument with fewer than 4 usable points.
RateFit rate_fit(const std::vector<FitPoint>& seq, FitModel model, double lo, double hi);

enum class LimitTarget { Dirac, Yamabe, OrdinaryRescaled };

struct LimitRow {
  int n = 0;
  double value = 0.0;
  double limit = 0.0;
  double gap = 0.0;
};

// Dirac: |det| against 1, the gap being the complex distance |det - 1|.
// Yamabe: det against 1. OrdinaryRescaled: rescaled zeta'(0) against 1 + log 2 pi.
std::vector<LimitRow> limit_report(LimitTarget target, const std::vector<int>& ns, Precision prec);

}  // namespace spheredet::asymptotics
