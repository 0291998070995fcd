// Acceptance battery. Prints one PASS/FAIL line per criterion.
//
//   spheredet_acceptance            run all criteria
//   spheredet_acceptance --only 4   run criterion 4 only
//
// Exit status is 0 iff every criterion that ran passed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "spheredet/asymptotics.hpp"
#include "spheredet/barnes.hpp"
#include "spheredet/dirac.hpp"
#include "spheredet/laplace.hpp"
#include "spheredet/special_values.hpp"

using namespace spheredet;

namespace {

// Pinned tolerances.
constexpr double kDiracDistanceAt50 = 1e-6;
constexpr double kDiracSlopeSlack = 0.05;
constexpr double kBoundRatio = 5.0 / 9.0;
constexpr double kOracleRelative = 1e-10;
constexpr double kBarnesCross = 1e-8;
constexpr double kDowkerOracle = 1e-8;
constexpr double kYamabeCorrectionRatio = 0.55;
constexpr double kRescaledZetaGap = 0.05;
constexpr double kRescaledDetGap = 0.005;
constexpr double kYamabeDistance = 1e-6;
constexpr double kYamabeSlopeSlack = 0.05;
constexpr double kLemmaSlackFactor = 10.0;
constexpr double kLemmaOracleAgreement = 1e-7;
constexpr Precision kPrec = 128;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double slope_exp(const std::vector<std::pair<int, double>>& pts) {
  std::vector<asymptotics::FitPoint> fp;
  for (const auto& [n, v] : pts) fp.push_back({double(n), v});
  return asymptotics::rate_fit(fp, asymptotics::FitModel::Exponential, pts.front().first, pts.back().first).slope;
}

// 1. Dirac determinant tends to 1 at rate (3/4)^n.
Verdict dirac_limit() {
  std::vector<double> gap(61, 0.0);
  std::vector<std::pair<int, double>> zp;
  for (int n = 2; n <= 60; ++n) {
    auto r = dirac::dirac_det(n, kPrec);
    // |d e^{i phi} - 1| recomputed from the two primary outputs
    const double d = std::exp(-r.zeta_prime_zero.to_double() / 2.0);
    gap[static_cast<std::size_t>(n)] = std::abs(std::polar(d, r.phase.to_double()) - 1.0);
    if (n >= 10 && n <= 40) zp.push_back({n, r.zeta_prime_zero.to_double()});
  }
  int first_bad = 0;
  for (int n = 7; n <= 60 && !first_bad; ++n) {
    if (!(gap[static_cast<std::size_t>(n)] < gap[static_cast<std::size_t>(n - 1)])) first_bad = n;
  }
  double worst_tail = 0.0;
  for (int n = 50; n <= 60; ++n) worst_tail = std::max(worst_tail, gap[static_cast<std::size_t>(n)]);
  const double slope = slope_exp(zp);
  const double limit = std::log(0.75) + kDiracSlopeSlack;
  Verdict v;
  v.pass = first_bad == 0 && worst_tail <= kDiracDistanceAt50 && slope <= limit;
  v.detail = "monotone beyond 6: " + std::string(first_bad ? "no (n=" + std::to_string(first_bad) + ")" : "yes") +
             ", max |det-1| n>=50 = " + fmt("%.3e", worst_tail) + ", slope " + fmt("%.4f", slope) + " <= " +
             fmt("%.4f", limit);
  return v;
}

// 2. Sign pattern modulo 4, derived here from the exact zeta(0) and the sign
// of zeta'(0), and compared with the library scan.
Verdict mod4() {
  int violations = 0;
  for (int n = 2; n <= 60; ++n) {
    const int phase_sign = sgn(dirac::dirac_zeta_zero_exact(n));
    const bool below = dirac::dirac_zeta_prime_zero(n, kPrec).value.sign() > 0;  // |det| = e^{-zeta'/2}
    bool ok = false;
    switch (n % 4) {
      case 0: ok = below && phase_sign > 0; break;
      case 1: ok = !below && phase_sign == 0; break;
      case 2: ok = !below && phase_sign < 0; break;
      default: ok = below && phase_sign == 0; break;
    }
    violations += ok ? 0 : 1;
  }
  auto scan = asymptotics::mod4_pattern_scan(2, 60, kPrec);
  Verdict v;
  v.pass = violations == 0 && scan.violations.empty() && scan.rows.size() == 59;
  v.detail = std::to_string(59 - violations) + "/59 n satisfy the pattern; library scan violations: " +
             std::to_string(scan.violations.size());
  return v;
}

// 3. Bound sequences.
Verdict bounds() {
  auto b = dirac::bound_sequences(26, kPrec);
  double amax = 0.0;
  double bmax = 0.0;
  for (int k = 2; k <= 25; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    amax = std::max(amax, (b.a[i + 1] / b.a[i]).to_double());
    bmax = std::max(bmax, (b.b[i + 1] / b.b[i]).to_double());
  }
  const double c_r = special::zeta_bound_constant(kPrec).to_double();
  int outside = 0;
  for (int k = 1; k <= 25; ++k) {
    const double z0 = std::fabs(dirac::dirac_zeta_zero_exact(2 * k).get_d());
    if (z0 > c_r * b.a[static_cast<std::size_t>(k - 1)].to_double() * (1.0 + 1e-14)) ++outside;
  }
  Verdict v;
  v.pass = amax <= kBoundRatio && bmax <= kBoundRatio && outside == 0;
  v.detail = "max A(k+1)/A(k) = " + fmt("%.4f", amax) + ", max B(k+1)/B(k) = " + fmt("%.4f", bmax) +
             " (limit 5/9), |zeta(0)| > C_R A(k) for " + std::to_string(outside) + " k";
  return v;
}

// 4. Formula against the eigenvalue series, summed independently here.
Verdict spectral_oracle() {
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const Real z = dirac::dirac_zeta(n, Real(static_cast<long>(n), kPrec), kPrec);
    const long double formula = mpfr_get_ld(z.raw(), MPFR_RNDN);
    // eigenvalues (n/2+m)^2 with multiplicity 2^{floor(n/2)+1} C(m+n-1, m)
    const long double series =
        std::ldexp(1.0L, n / 2 + 1) * oracle::barnes_brute(n, n / 2.0L, 2.0L * n, 400000);
    worst = std::max(worst, static_cast<double>(std::fabs(formula - series) / std::fabs(formula)));
  }
  return {worst <= kOracleRelative, "max relative difference n=2..10: " + fmt("%.3e", worst)};
}

// 5. Barnes cross-method and functional equation.
Verdict barnes_cross() {
  double worst = 0.0;
  std::string where;
  for (int n = 1; n <= 12; ++n) {
    for (auto a : {Rational(1), fraction(n, 2), Rational(n - 1), Rational(n)}) {
      if (a <= 0) continue;
      auto dec = barnes::barnes_prime_zero(n, a, kPrec);
      auto con = barnes::barnes_contour_prime_zero(n, a, barnes::default_contour(n, a));
      const double d = std::fabs((dec.value - con.value).to_double());
      if (d > worst) {
        worst = d;
        where = "n=" + std::to_string(n) + " a=" + to_string(a);
      }
    }
  }
  int feq_bad = 0;
  for (int n = 1; n <= 12; ++n) {
    const Real s(static_cast<long>(n + 2), kPrec);
    auto z0 = barnes::barnes_series(n, Rational(0), s, kPrec);
    auto z1 = barnes::barnes_series(n, Rational(1), s, kPrec);
    auto up = barnes::barnes_series(n, Rational(1), s + Real(1L, kPrec), kPrec);
    Real resid = abs(z0.value - z1.value - up.value * Rational(n - 1));
    if (resid > z0.error_bound + z1.error_bound + up.error_bound * Rational(n - 1)) ++feq_bad;
  }
  return {worst <= kBarnesCross && feq_bad == 0,
          "max |decomposition - contour| = " + fmt("%.3e", worst) + " (" + where +
              "), functional equation failures at s=n+2: " + std::to_string(feq_bad)};
}

// 6. Closed form against the spectral oracle.
Verdict dowker_oracle() {
  double worst = 0.0;
  for (auto op : {laplace::Operator::Ordinary, laplace::Operator::Yamabe}) {
    for (int n = 2; n <= 6; ++n) {
      auto p = laplace::make_params(n, op);
      const double d = std::fabs((laplace::laplace_zeta_prime_zero(p, kPrec).value -
                                  laplace::spectral_oracle_zeta_prime(n, p.alpha, kPrec).value)
                                     .to_double());
      worst = std::max(worst, d);
    }
  }
  return {worst <= kDowkerOracle, "max |closed form - oracle| n=2..6 = " + fmt("%.3e", worst)};
}

// 7. Correction term.
Verdict correction() {
  int nonzero = 0;
  for (int n = 3; n <= 31; n += 2) {
    for (auto a : {fraction(1, 2), Rational(1), fraction(n - 1, 2)}) nonzero += laplace::correction_term(n, a) == 0 ? 0 : 1;
  }
  double worst = 0.0;
  for (int k = 10; k <= 40; ++k) {
    Rational r = laplace::correction_term(2 * k + 2, fraction(1, 2)) / laplace::correction_term(2 * k, fraction(1, 2));
    worst = std::max(worst, std::fabs(r.get_d()));
  }
  const bool known = laplace::correction_term(4, fraction(1, 2)) == fraction(-1, 144);
  return {nonzero == 0 && worst <= kYamabeCorrectionRatio && known,
          "odd-n nonzero: " + std::to_string(nonzero) + ", max Yamabe ratio k>=10 = " + fmt("%.4f", worst) +
              ", (4,1/2) = " + to_string(laplace::correction_term(4, fraction(1, 2)))};
}

// 8. Ordinary Laplacian growth and the rescaled limit.
Verdict ordinary_growth() {
  constexpr Precision prec = 96;
  std::vector<int> ns;
  std::vector<double> offset;
  std::vector<double> scaled;
  double last_rescaled = 0.0;
  double last_det = 0.0;
  for (int n = 11; n <= 301; n += 2) {
    auto r = laplace::rescaled_det(n, prec);
    const double ln = std::log(double(n));
    const double off = r.zeta_prime_zero.to_double() - ln;
    ns.push_back(n);
    offset.push_back(off);
    scaled.push_back(std::fabs(off) * ln / std::log(ln));
    last_rescaled = r.rescaled_zeta_prime_zero.to_double();
    last_det = r.rescaled_det.to_double();
  }
  double c_fit = 0.0;
  double later = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    (ns[i] <= 151 ? c_fit : later) = std::max(ns[i] <= 151 ? c_fit : later, scaled[i]);
  }
  const double lo = *std::min_element(offset.begin(), offset.end());
  const double hi = *std::max_element(offset.begin(), offset.end());
  const double zeta_limit = 1.0 + std::log(2.0 * M_PI);
  const double det_limit = 1.0 / (2.0 * M_PI * std::exp(1.0));
  const double zgap = std::fabs(last_rescaled - zeta_limit);
  const double dgap = std::fabs(last_det - det_limit);
  const bool rate_ok = later <= c_fit;
  Verdict v;
  v.pass = rate_ok && zgap <= kRescaledZetaGap && dgap <= kRescaledDetGap;
  v.detail = "zeta'-log n in [" + fmt("%.4f", lo) + ", " + fmt("%.4f", hi) + "], scaled offset max n<=151 (C) = " +
             fmt("%.3f", c_fit) + ", max n>151 = " + fmt("%.3f", later) + ", rescaled zeta'(301) = " +
             fmt("%.4f", last_rescaled) + " vs " + fmt("%.6f", zeta_limit) + " (gap " + fmt("%.3f", zgap) +
             "), rescaled det(301) = " + fmt("%.4f", last_det) + " vs " + fmt("%.7f", det_limit) + " (gap " +
             fmt("%.4f", dgap) + ")";
  return v;
}

// 9. Yamabe limit.
Verdict yamabe_limit() {
  double worst = 0.0;
  for (int n = 30; n <= 60; ++n) {
    auto r = laplace::laplace_det(laplace::make_params(n, laplace::Operator::Yamabe), kPrec);
    worst = std::max(worst, std::fabs(r.det.to_double() - 1.0));
  }
  std::vector<std::pair<int, double>> zp;
  for (int n = 10; n <= 30; ++n) {
    zp.push_back(
        {n, laplace::laplace_zeta_prime_zero(laplace::make_params(n, laplace::Operator::Yamabe), kPrec).value.to_double()});
  }
  const double slope = slope_exp(zp);
  const double limit = std::log(0.5) + kYamabeSlopeSlack;
  return {worst <= kYamabeDistance && slope <= limit,
          "max |det-1| n=30..60 = " + fmt("%.3e", worst) + ", slope n=10..30 = " + fmt("%.4f", slope) + " <= " +
              fmt("%.4f", limit)};
}

// Composite Simpson rule for the lemma integrand, written out here.
std::complex<double> simpson(int n, double a, double b, const asymptotics::TestFunction& phi, long steps) {
  auto f = [&](double x) { return std::pow(std::complex<double>(-1.0, std::exp(-x)), -n) * phi.value(x); };
  const double h = (b - a) / steps;
  std::complex<double> acc = f(a) + f(b);
  for (long i = 1; i < steps; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

// 10. Lemma battery and the no-oscillation bracket.
Verdict lemma() {
  int failed = 0;
  double min_margin = 1e300;
  double worst_oracle = 0.0;
  int count = 0;
  for (const auto& inst : asymptotics::lemma_battery({10, 20, 40, 80, 160})) {
    ++count;
    const double mag = std::abs(inst.integral);
    const bool ok = mag <= inst.bound + kLemmaSlackFactor * inst.quad_error && inst.pieces == inst.n_ab + 1;
    failed += ok ? 0 : 1;
    min_margin = std::min(min_margin, inst.bound - mag);
    auto ref = simpson(inst.n, inst.a, inst.b, inst.phi, 200000);
    worst_oracle = std::max(worst_oracle, std::abs(ref - inst.integral));
  }
  int outside = 0;
  std::string vals;
  for (double n : {1e2, 1e3, 1e4}) {
    auto row = asymptotics::no_oscillation_integral(n);
    outside += row.within ? 0 : 1;
    vals += fmt(" %.4f", row.value) + " in [" + fmt("%.4f", row.lower) + "," + fmt("%.4f", row.upper) + "]";
  }
  return {failed == 0 && outside == 0 && worst_oracle <= kLemmaOracleAgreement,
          std::to_string(count - failed) + "/" + std::to_string(count) + " instances within bound (min margin " +
              fmt("%.3f", min_margin) + ", Simpson agreement " + fmt("%.1e", worst_oracle) + "); no-oscillation:" + vals};
}

// 11. Precision doubling in the cancellation regime.
Verdict precision_doubling() {
  int bad = 0;
  int checked = 0;
  double worst_ratio = 0.0;
  for (int n = 2; n <= 200; ++n) {
    for (auto a : {Rational(n - 1), Rational(n)}) {
      auto lo = barnes::barnes_prime_zero(n, a, kPrec);
      auto hi = barnes::barnes_prime_zero(n, a, 2 * kPrec);
      ++checked;
      const Real diff = abs(lo.value - hi.value);
      if (!(diff < lo.error_bound)) ++bad;
      if (!diff.is_zero()) worst_ratio = std::max(worst_ratio, (diff / lo.error_bound).to_double());
    }
  }
  for (int n = 11; n <= 200; n += 21) {
    auto p = laplace::make_params(n, laplace::Operator::Ordinary);
    auto lo = laplace::laplace_zeta_prime_zero(p, kPrec);
    auto hi = laplace::laplace_zeta_prime_zero(p, 2 * kPrec);
    ++checked;
    const Real diff = abs(lo.value - hi.value);
    if (!(diff < lo.error)) ++bad;
    if (!diff.is_zero()) worst_ratio = std::max(worst_ratio, (diff / lo.error).to_double());
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) +
                        " values move less than their error bound; max |change|/bound = " + fmt("%.3e", worst_ratio)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> criteria{
      {1, "dirac-limit", dirac_limit},           {2, "mod4-pattern", mod4},
      {3, "bound-recursions", bounds},           {4, "dirac-spectral-oracle", spectral_oracle},
      {5, "barnes-cross-method", barnes_cross},  {6, "laplace-closed-form-vs-oracle", dowker_oracle},
      {7, "correction-term", correction},        {8, "ordinary-laplacian-growth", ordinary_growth},
      {9, "yamabe-limit", yamabe_limit},         {10, "lemma-battery", lemma},
      {11, "precision-robustness", precision_doubling},
  };
  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %2d %-30s %s (%.1fs)\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && v.pass;
  }
  return all ? 0 : 1;
}
