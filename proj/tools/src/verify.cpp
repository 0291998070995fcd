#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "spheredet/asymptotics.hpp"
#include "spheredet/barnes.hpp"
#include "spheredet/cli/commands.hpp"
#include "spheredet/coeffs.hpp"
#include "spheredet/dirac.hpp"
#include "spheredet/laplace.hpp"
#include "spheredet/special_values.hpp"

namespace spheredet::cli {

namespace {

using Checks = std::vector<Check>;

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// passes when measured <= threshold
void at_most(Checks& out, const char* suite, std::string name, double measured, double threshold, std::string detail = {}) {
  out.push_back({suite, std::move(name), measured <= threshold, measured, threshold, std::move(detail)});
}

void holds(Checks& out, const char* suite, std::string name, bool ok, std::string detail = {}) {
  out.push_back({suite, std::move(name), ok, ok ? 0.0 : 1.0, 0.0, std::move(detail)});
}

double rel_diff(const Real& a, const Real& b) {
  return (abs(a - b) / max(abs(a), abs(b))).to_double();
}

Checks suite_coeffs() {
  Checks out;
  const char* s = "coeffs";
  long even_bad = 0;
  long odd_bad = 0;
  long sign_bad = 0;
  for (int k = 1; k <= 25; ++k) {
    std::vector<Rational> sq;
    std::vector<Rational> half_sq;
    for (int p = 1; p < k; ++p) {
      sq.emplace_back(p * p);
      half_sq.push_back(fraction((2L * p - 1) * (2L * p - 1), 4));
    }
    const auto& d = coeffs::dirac_coeffs_even(k).coeffs;
    const auto& e = coeffs::dirac_coeffs_odd(k).coeffs;
    if (d != coeffs::expand_roots(sq)) ++even_bad;
    if (e != coeffs::expand_roots(half_sq)) ++odd_bad;
    for (int a = 0; a < k; ++a) {
      const int want = (k - 1 - a) % 2 == 0 ? 1 : -1;
      if (sgn(d[static_cast<std::size_t>(a)]) != want || sgn(e[static_cast<std::size_t>(a)]) != want) ++sign_bad;
      if (d[static_cast<std::size_t>(a)].get_den() != 1) ++sign_bad;
    }
    if (d.back() != 1 || e.back() != 1) ++sign_bad;
  }
  at_most(out, s, "dirac-even recursion vs expansion, k<=25", static_cast<double>(even_bad), 0);
  at_most(out, s, "dirac-odd recursion vs expansion, k<=25", static_cast<double>(odd_bad), 0);
  at_most(out, s, "sign, integrality and leading-one invariants", static_cast<double>(sign_bad), 0);

  long lap_bad = 0;
  for (int n = 3; n <= 31; n += 2) {
    const auto& c = coeffs::laplace_coeffs(n).coeffs;
    if (c.size() != static_cast<std::size_t>(n - 1) || c.back() != 1) ++lap_bad;
    for (std::size_t r = 0; r < c.size(); r += 2) {
      if (c[r] != 0) ++lap_bad;
    }
  }
  at_most(out, s, "laplace polynomial: odd n has zero even entries, n<=31", static_cast<double>(lap_bad), 0);

  long harm_bad = 0;
  if (coeffs::harmonic(0) != 0 || coeffs::odd_harmonic(1) != 1) ++harm_bad;
  for (int j = 1; j <= 50; ++j) {
    if (coeffs::harmonic(j) - coeffs::harmonic(j - 1) != fraction(1, j)) ++harm_bad;
    if (coeffs::odd_harmonic(j + 1) - coeffs::odd_harmonic(j) != fraction(1, 2L * j + 1)) ++harm_bad;
  }
  at_most(out, s, "harmonic and odd-harmonic increments, j<=50", static_cast<double>(harm_bad), 0);
  return out;
}

Checks suite_special(Precision prec) {
  Checks out;
  const char* s = "special";
  holds(out, s, "B_2 = 1/6, B_12 = -691/2730",
        special::bernoulli(2) == fraction(1, 6) && special::bernoulli(12) == fraction(-691, 2730));
  bool trivial = true;
  for (int k = 1; k <= 30; ++k) trivial = trivial && special::zeta_nonpositive(-2 * k) == 0;
  holds(out, s, "trivial zeros zeta(-2k) = 0, k<=30", trivial);

  const Real pi = const_pi(prec + 16);
  const double eps = std::ldexp(1.0, -static_cast<int>(prec) + 8);
  at_most(out, s, "zeta(2) = pi^2/6", rel_diff(special::zeta_pos(2, prec), pi * pi / 6L), eps);
  Real zp0 = special::hurwitz_prime_at(0, Rational(1), prec).value;
  at_most(out, s, "zeta'(0) = -log(2 pi)/2", rel_diff(zp0, -(special::log_two_pi(prec) / 2L)), eps);
  // zeta'(-1) reference digits
  Real zpm1_ref = Real::parse("-0.16542114370045092921391966024278064276063", prec);
  at_most(out, s, "zeta'(-1) reference", rel_diff(special::zeta_prime_neg_odd(0, prec), zpm1_ref),
          std::max(eps, 1e-30));

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> sdist(-6.0, 6.0);
  std::uniform_int_distribution<int> pdist(1, 40);
  std::uniform_int_distribution<int> qdist(1, 12);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    double sv = sdist(rng);
    if (std::fabs(sv - 1.0) < 1e-3) sv += 0.5;
    const Rational a = fraction(pdist(rng), qdist(rng));
    const Real sr(sv, prec);
    const Real ar(a, prec);
    Real lhs = special::hurwitz(sr, a, prec).value - special::hurwitz(sr, Rational(a + 1), prec).value;
    Real rhs = pow(ar, -sr);
    worst = std::max(worst, rel_diff(lhs, rhs));
  }
  at_most(out, s, "hurwitz shift identity at 100 random points", worst, std::ldexp(1.0, -static_cast<int>(prec) + 40));

  special::SpecialValueCache cache;
  cache.zeta_pos(3, prec);
  const Precision p1 = cache.stored_precision(special::SpecialTag::ZetaAt, 3);
  cache.zeta_pos(3, 2 * prec);
  const Precision p2 = cache.stored_precision(special::SpecialTag::ZetaAt, 3);
  cache.zeta_pos(3, prec);
  const Precision p3 = cache.stored_precision(special::SpecialTag::ZetaAt, 3);
  holds(out, s, "cache precision is monotone", p1 >= prec && p2 >= 2 * prec && p3 == p2);
  return out;
}

Checks suite_barnes(Precision prec) {
  Checks out;
  const char* s = "barnes-crosscheck";
  for (int n = 1; n <= 12; ++n) {
    std::vector<Rational> shifts{Rational(1), fraction(n, 2), Rational(n - 1), Rational(n)};
    std::sort(shifts.begin(), shifts.end());
    shifts.erase(std::unique(shifts.begin(), shifts.end()), shifts.end());
    for (const auto& a : shifts) {
      if (a <= 0) continue;
      auto dec = barnes::barnes_prime_zero(n, a, prec);
      auto con = barnes::barnes_contour_prime_zero(n, a, barnes::default_contour(n, a));
      const double diff = std::fabs((dec.value - con.value).to_double());
      at_most(out, s, "decomposition vs contour n=" + std::to_string(n) + " a=" + spheredet::to_string(a), diff, 1e-8,
              "zeta'=" + dec.value.to_string(16));
    }
  }
  // zeta_n(s,0) = zeta_n(s,1) + (n-1) zeta_n(s+1,1), m = 0 omitted on the left
  for (int n = 1; n <= 12; ++n) {
    for (int shift_s = 2; shift_s <= 3; ++shift_s) {
      const Real sv(static_cast<long>(n + shift_s), prec);
      auto at0 = barnes::barnes_series(n, Rational(0), sv, prec);
      auto at1 = barnes::barnes_series(n, Rational(1), sv, prec);
      auto up = barnes::barnes_series(n, Rational(1), sv + Real(1L, prec), prec);
      const double residual = std::fabs((at0.value - at1.value - up.value * Rational(n - 1)).to_double());
      const double tol = (at0.error_bound + at1.error_bound + up.error_bound * Rational(n - 1)).to_double();
      at_most(out, s, "functional equation n=" + std::to_string(n) + " s=n+" + std::to_string(shift_s), residual, tol);
    }
  }
  return out;
}

Checks suite_dirac(Precision prec) {
  Checks out;
  const char* s = "dirac-oracle";
  for (int n = 2; n <= 10; ++n) {
    const Real sv(static_cast<long>(n), prec);
    Real branson = dirac::dirac_zeta(n, sv, prec);
    auto series = dirac::dirac_spectral_series(n, sv, prec);
    at_most(out, s, "formula vs eigenvalue series at s=n, n=" + std::to_string(n), rel_diff(branson, series.value), 1e-10);
  }
  double worst = 0.0;
  for (int n = 2; n <= 60; n += 2) {
    Real exact(dirac::dirac_zeta_zero_exact(n), prec + 16);
    Real flt = dirac::dirac_zeta_zero(n, prec);
    worst = std::max(worst, std::fabs((exact - flt).to_double()));
  }
  at_most(out, s, "zeta(0): exact rational vs rewritten form, even n<=60", worst,
          std::ldexp(1.0, -static_cast<int>(prec) + 16));
  auto b = dirac::bound_sequences(25, prec);
  double amax = 0.0;
  double bmax = 0.0;
  for (std::size_t i = 0; i < b.a_ratio.size(); ++i) {
    amax = std::max(amax, b.a_ratio[i].to_double());
    bmax = std::max(bmax, b.b_ratio[i].to_double());
  }
  at_most(out, s, "A(k+1)/A(k), k<=24", amax, 5.0 / 9.0);
  at_most(out, s, "B(k+1)/B(k), k<=24", bmax, 5.0 / 9.0);
  holds(out, s, "|zeta(0)| <= C_R A(k), k<=25",
        std::all_of(b.zeta_zero_within.begin(), b.zeta_zero_within.end(), [](bool v) { return v; }));
  holds(out, s, "|zeta'(0)| <= B(k), k<=25",
        std::all_of(b.zeta_prime_within.begin(), b.zeta_prime_within.end(), [](bool v) { return v; }));
  return out;
}

Checks suite_laplace(Precision prec) {
  Checks out;
  const char* s = "laplace-oracle";
  for (auto op : {laplace::Operator::Ordinary, laplace::Operator::Yamabe}) {
    for (int n = 2; n <= 6; ++n) {
      auto p = laplace::make_params(n, op);
      auto dowker = laplace::laplace_zeta_prime_zero(p, prec);
      auto oracle = laplace::spectral_oracle_zeta_prime(n, p.alpha, prec);
      at_most(out, s, std::string("closed form vs spectral oracle ") + laplace::to_string(op) + " n=" + std::to_string(n),
              std::fabs((dowker.value - oracle.value).to_double()), 1e-8);
    }
  }
  bool odd_zero = true;
  for (int n = 3; n <= 31; n += 2) {
    for (auto op : {laplace::Operator::Ordinary, laplace::Operator::Yamabe}) {
      odd_zero = odd_zero && laplace::correction_term(n, laplace::make_params(n, op).alpha) == 0;
    }
  }
  holds(out, s, "correction term vanishes for odd n<=31", odd_zero);
  holds(out, s, "correction term (4, 1/2) = -1/144", laplace::correction_term(4, fraction(1, 2)) == fraction(-1, 144));
  double worst_ratio = 0.0;
  for (int k = 10; k <= 30; ++k) {
    Rational r = laplace::correction_term(2 * k + 2, fraction(1, 2)) / laplace::correction_term(2 * k, fraction(1, 2));
    worst_ratio = std::max(worst_ratio, std::fabs(r.get_d()));
  }
  at_most(out, s, "Yamabe correction even-n ratio, k=10..30", worst_ratio, 0.55);
  return out;
}

Checks suite_mod4(Precision prec) {
  Checks out;
  auto rep = asymptotics::mod4_pattern_scan(2, 60, prec);
  for (const auto& r : rep.rows) {
    holds(out, "mod4", "n=" + std::to_string(r.n), r.expected,
          std::string(r.det_below_one ? "|det|<1" : "|det|>1") + " phase sign " + std::to_string(r.phase_sign));
  }
  return out;
}

Checks suite_rates(Precision prec) {
  Checks out;
  const char* s = "rates";
  std::vector<asymptotics::FitPoint> dpts;
  for (int n = 10; n <= 40; ++n) dpts.push_back({double(n), dirac::dirac_zeta_prime_zero(n, prec).value.to_double()});
  auto dfit = asymptotics::rate_fit(dpts, asymptotics::FitModel::Exponential, 10, 40);
  at_most(out, s, "dirac log|zeta'(0)| slope, n=10..40", dfit.slope, std::log(0.75) + 0.05);

  auto drows = asymptotics::limit_report(asymptotics::LimitTarget::Dirac, [] {
    std::vector<int> v;
    for (int n = 2; n <= 60; ++n) v.push_back(n);
    return v;
  }(), prec);
  long nonmono = 0;
  for (std::size_t i = 1; i < drows.size(); ++i) {
    if (drows[i].n > 6 && drows[i].gap >= drows[i - 1].gap) ++nonmono;
  }
  at_most(out, s, "dirac |det-1| strictly shrinking beyond n=6", static_cast<double>(nonmono), 0);
  at_most(out, s, "dirac |det-1| at n=50", drows[48].gap, 1e-6);

  std::vector<asymptotics::FitPoint> ypts;
  for (int n = 10; n <= 30; ++n) {
    ypts.push_back({double(n), laplace::laplace_zeta_prime_zero(laplace::make_params(n, laplace::Operator::Yamabe), prec)
                                   .value.to_double()});
  }
  auto yfit = asymptotics::rate_fit(ypts, asymptotics::FitModel::Exponential, 10, 30);
  at_most(out, s, "yamabe log|zeta'(0)| slope, n=10..30", yfit.slope, std::log(0.5) + 0.05);
  auto yrows = asymptotics::limit_report(asymptotics::LimitTarget::Yamabe, {30, 35, 40}, prec);
  double yworst = 0.0;
  for (const auto& r : yrows) yworst = std::max(yworst, r.gap);
  at_most(out, s, "yamabe |det-1| for n in {30,35,40}", yworst, 1e-6);

  std::vector<asymptotics::FitPoint> syn;
  for (int n = 0; n <= 40; ++n) syn.push_back({double(n), 2.5 * std::pow(0.6, n)});
  auto sfit = asymptotics::rate_fit(syn, asymptotics::FitModel::Exponential, 0, 40);
  at_most(out, s, "fitter recovers planted log(0.6)", std::fabs(sfit.slope - std::log(0.6)), 1e-3);
  return out;
}

Checks suite_lemma() {
  Checks out;
  const char* s = "lemma";
  for (const auto& inst : asymptotics::lemma_battery({10, 20, 40, 80, 160})) {
    const std::string tag = inst.phi.name + " n=" + std::to_string(inst.n);
    out.push_back({s, "margin " + tag, inst.holds && inst.pieces == inst.n_ab + 1, -inst.margin, 0.0,
                   "|I|=" + num(std::abs(inst.integral)) + " bound=" + num(inst.bound)});
  }
  double prev = -1.0;
  for (double n : {1e2, 1e3, 1e4}) {
    auto row = asymptotics::no_oscillation_integral(n);
    out.push_back({s, "no-oscillation bracket n=" + num(n), row.within && row.value > prev, row.value, row.upper,
                   "[" + num(row.lower) + ", " + num(row.upper) + "]"});
    prev = row.value;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"coeffs", "special", "barnes-crosscheck", "dirac-oracle", "laplace-oracle",
                                              "mod4",   "rates",   "lemma",             "all"};
  return names;
}

std::vector<Check> run_suite(const std::string& suite, Precision prec) {
  if (suite == "all") {
    std::vector<Check> all;
    for (const auto& name : suite_names()) {
      if (name == "all") continue;
      auto part = run_suite(name, prec);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  if (suite == "coeffs") return suite_coeffs();
  if (suite == "special") return suite_special(prec);
  if (suite == "barnes-crosscheck") return suite_barnes(prec);
  if (suite == "dirac-oracle") return suite_dirac(prec);
  if (suite == "laplace-oracle") return suite_laplace(prec);
  if (suite == "mod4") return suite_mod4(prec);
  if (suite == "rates") return suite_rates(prec);
  if (suite == "lemma") return suite_lemma();
  throw ConfigError("unknown suite: " + suite);
}

}  // namespace spheredet::cli
