#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "spheredet/special_values.hpp"

using namespace spheredet;
using namespace spheredet::special;

namespace {

constexpr Precision kPrec = 160;

double rel(const Real& a, const oracle::F& b) {
  Real bb(0L, kPrec);
  mpfr_set(bb.raw(), b.v, MPFR_RNDN);
  return (abs(a - bb) / abs(bb)).to_double();
}

}  // namespace

TEST_CASE("bernoulli numbers match the recurrence") {
  auto table = oracle::bernoulli_table(60);
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == fraction(-1, 2));
  CHECK(bernoulli(2) == fraction(1, 6));
  CHECK(bernoulli(12) == fraction(-691, 2730));
  for (int m = 0; m <= 60; ++m) CHECK(bernoulli(m) == table[static_cast<std::size_t>(m)]);
}

TEST_CASE("riemann zeta at nonpositive integers") {
  CHECK(zeta_nonpositive(0) == fraction(-1, 2));
  CHECK(zeta_neg_odd(0) == fraction(-1, 12));
  CHECK(zeta_neg_odd(1) == fraction(1, 120));
  CHECK(zeta_neg_odd(2) == fraction(-1, 252));
  for (int a = 1; a <= 50; ++a) CHECK(zeta_nonpositive(-2 * a) == 0);
  for (int a = 0; a <= 20; ++a) {
    CHECK(rel(Real(zeta_neg_odd(a), kPrec), oracle::zeta_at(-2.0 * a - 1, kPrec)) < 1e-40);
  }
}

TEST_CASE("zeta at positive integers against mpfr_zeta") {
  CHECK(std::fabs(zeta_pos(2, 64).to_double() - 1.644934066848226) < 1e-15);
  CHECK(std::fabs(zeta_pos(3, 64).to_double() - 1.202056903159594) < 1e-15);
  Real pi = const_pi(kPrec);
  CHECK((abs(zeta_pos(4, kPrec) - pow(pi, 4) / 90L)).to_double() < 1e-45);
  for (int m = 2; m <= 40; ++m) CHECK(rel(zeta_pos(m, kPrec), oracle::zeta_at(m, kPrec)) < 1e-45);
}

TEST_CASE("zeta derivatives against finite differences of mpfr_zeta") {
  CHECK(std::fabs(zeta_prime_pos(2, 64).to_double() + 0.937548254316) < 1e-11);
  CHECK(std::fabs(zeta_prime_pos(3, 64).to_double() + 0.198126242885) < 1e-11);
  CHECK(std::fabs(zeta_prime_neg_odd(0, 64).to_double() + 0.165421143700) < 1e-11);
  CHECK(std::fabs(zeta_prime_neg_odd(1, 64).to_double() - 0.005378576357) < 1e-11);
  CHECK(std::fabs(zeta_prime_neg_even(1, 64).to_double() + 0.030448457058) < 1e-11);
  CHECK(std::fabs(zeta_prime_neg_even(2, 64).to_double() - 0.007983811450) < 1e-11);
  for (int a = 0; a <= 8; ++a) {
    CHECK(rel(zeta_prime_neg_odd(a, 96), oracle::zeta_prime(-2.0 * a - 1, 96, 40)) < 1e-24);
    if (a >= 1) {
      CHECK(rel(zeta_prime_neg_even(a, 96), oracle::zeta_prime(-2.0 * a, 96, 40)) < 1e-24);
      CHECK(zeta_prime_neg_even(a, 64).sign() == (a % 2 == 0 ? 1 : -1));
    }
  }
  double prev = 1.0;
  for (int m = 2; m <= 30; ++m) {
    const double v = zeta_prime_pos(m, 64).to_double();
    CHECK(v < 0.0);
    CHECK(std::fabs(v) < prev);
    CHECK(std::fabs(v) <= zeta_prime_bound_constant(64).to_double());
    prev = std::fabs(v);
  }
}

TEST_CASE("constants") {
  CHECK(std::fabs(euler_gamma(64).to_double() - 0.5772156649015329) < 1e-16);
  CHECK(std::fabs(log_two_pi(64).to_double() - 1.8378770664093453) < 1e-15);
  Real zp0 = hurwitz_prime_at(0, Rational(1), kPrec).value;
  CHECK((abs(zp0 + log_two_pi(kPrec) / 2L)).to_double() < 1e-45);
  CHECK(zeta_bound_constant(64).to_double() == doctest::Approx(1.6449340668482264));
}

TEST_CASE("zeta_half") {
  CHECK(zeta_half(Real(0L, 64), 64).is_zero());
  Real pi = const_pi(kPrec);
  CHECK((abs(zeta_half(Real(2L, kPrec), kPrec) - pi * pi / 2L)).to_double() < 1e-45);
  CHECK(std::fabs(zeta_half(Real(-1L, 64), 64).to_double() - 1.0 / 24.0) < 1e-18);
  CHECK_THROWS_AS(zeta_half(Real(1L, 64), 64), PoleError);
}

TEST_CASE("hurwitz values") {
  Real pi = const_pi(kPrec);
  CHECK((abs(hurwitz(Real(2L, kPrec), Rational(1), kPrec).value - pi * pi / 6L)).to_double() < 1e-45);
  CHECK(std::fabs(hurwitz_prime_at(0, fraction(1, 2), 64).value.to_double() + 0.346573590280) < 1e-12);
  // Lerch: d/ds zeta_H(0, a) = lngamma(a) - log(2 pi)/2
  for (auto a : {fraction(1, 3), fraction(7, 2), fraction(25, 4), Rational(9)}) {
    CHECK(hurwitz_prime_at(0, a, 80).value.to_double() == doctest::Approx(oracle::lerch(a.get_d())).epsilon(1e-14));
  }
  // zeta_H(s, 1/2) = (2^s - 1) zeta(s)
  for (double s : {-3.5, -0.25, 0.5, 2.5, 7.0}) {
    oracle::F z = oracle::zeta_at(s, kPrec);
    const double want = (std::pow(2.0, s) - 1.0) * z.d();
    CHECK(hurwitz(Real(s, kPrec), fraction(1, 2), kPrec).value.to_double() == doctest::Approx(want).epsilon(1e-14));
  }
  Real lhs = hurwitz(Real(3L, kPrec), Rational(3), kPrec).value;
  Real rhs = hurwitz(Real(3L, kPrec), Rational(2), kPrec).value - Real(fraction(1, 8), kPrec);
  CHECK((abs(lhs - rhs)).to_double() < 1e-45);
  CHECK_THROWS_AS(hurwitz(Real(1L, 64), Rational(2), 64), PoleError);
}

TEST_CASE("hurwitz shift identity at 100 random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> sd(-5.0, 10.0);
  std::uniform_real_distribution<double> ad(0.01, 10.0);
  for (int i = 0; i < 100; ++i) {
    double s = sd(rng);
    if (std::fabs(s - 1.0) < 1e-2) s += 0.1;
    const Real sr(s, kPrec);
    const Real ar(ad(rng), kPrec);
    auto z0 = hurwitz(sr, ar, kPrec);
    auto z1 = hurwitz(sr, ar + Real(1L, kPrec), kPrec);
    Real resid = abs(z0.value - z1.value - pow(ar, -sr));
    CHECK(resid <= (z0.error + z1.error) * 4L + abs(z0.value) * pow2(-static_cast<long>(kPrec) + 8, 64));
  }
}

TEST_CASE("certified derivative batch carries a plan") {
  std::vector<double> tol(6, -150.0);
  auto batch = hurwitz_prime_neg_batch(fraction(5, 2), tol, 128);
  REQUIRE(batch.size() == 6);
  for (const auto& c : batch) {
    CHECK(c.plan.working_precision >= 128);
    CHECK(c.error.log2_abs() <= -149.0);
  }
  CHECK(batch[0].value.to_double() == doctest::Approx(oracle::lerch(2.5)).epsilon(1e-14));
}

TEST_CASE("cache is monotone in precision") {
  SpecialValueCache cache;
  Real lo = cache.zeta_pos(5, 96);
  CHECK(cache.stored_precision(SpecialTag::ZetaAt, 5) >= 96);
  Real hi = cache.zeta_pos(5, 256);
  const Precision stored = cache.stored_precision(SpecialTag::ZetaAt, 5);
  CHECK(stored >= 256);
  Real again = cache.zeta_pos(5, 96);
  CHECK(cache.stored_precision(SpecialTag::ZetaAt, 5) == stored);
  CHECK((abs(lo - hi)).log2_abs() < -90.0);
  CHECK((abs(again - hi)).log2_abs() < -90.0);
  CHECK(cache.stored_precision(SpecialTag::EulerGamma, 0) == 0);
}
