#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "spheredet/dirac.hpp"
#include "spheredet/special_values.hpp"

using namespace spheredet;
using namespace spheredet::dirac;

namespace {

constexpr Precision kPrec = 128;

double z(double s) { return oracle::zeta_at(s, kPrec).d(); }

// 2^{floor(n/2)+1} sum_m C(m+n-1, n-1) (n/2+m)^{-2s}, brute force
double brute_series(int n, double s) {
  return std::ldexp(1.0, n / 2 + 1) * static_cast<double>(oracle::barnes_brute(n, n / 2.0L, 2.0L * s));
}

}  // namespace

TEST_CASE("zeta assembly against closed forms") {
  for (double s : {1.5, 2.0, 3.25}) {
    CHECK(dirac_zeta(2, Real(s, kPrec), kPrec).to_double() == doctest::Approx(4.0 * z(2 * s - 1)).epsilon(1e-14));
  }
  CHECK(dirac_zeta(4, Real(4L, kPrec), kPrec).to_double() == doctest::Approx(4.0 / 3.0 * (z(5) - z(7))).epsilon(1e-14));
  const double want3 = 2.0 * (-0.25 * 63.0 * z(6) + 15.0 * z(4));
  CHECK(dirac_zeta(3, Real(3L, kPrec), kPrec).to_double() == doctest::Approx(want3).epsilon(1e-14));
  CHECK_THROWS_AS(dirac_zeta(2, Real(1L, kPrec), kPrec), special::PoleError);
}

TEST_CASE("zeta(0)") {
  CHECK(dirac_zeta_zero_exact(2) == fraction(-1, 3));
  CHECK(dirac_zeta_zero(2, kPrec).to_double() == doctest::Approx(-1.0 / 3.0));
  CHECK(dirac_zeta_zero(3, kPrec).is_zero());
  CHECK(dirac_zeta_zero_exact(4) > 0);
  for (int n = 2; n <= 60; ++n) {
    const Rational exact = dirac_zeta_zero_exact(n);
    if (n % 2 == 1) {
      CHECK(exact == 0);
      continue;
    }
    CHECK(sgn(exact) == ((n / 2) % 2 == 0 ? 1 : -1));
    Real diff = abs(dirac_zeta_zero(n, kPrec) - Real(exact, kPrec + 32));
    CHECK(diff.log2_abs() < -static_cast<double>(kPrec) + 8 - std::fabs(Real(exact, 64).log2_abs()));
    // the analytic continuation at s = 0 agrees with the exact value
    const Real cont = dirac_zeta(n, Real(0L, kPrec), kPrec);
    CHECK(abs(cont - Real(exact, kPrec + 32)).to_double() <= 1e-25 * std::fabs(exact.get_d()));
  }
}

TEST_CASE("zeta'(0)") {
  const double zp_m1 = oracle::zeta_prime(-1.0, 96, 40).d();
  const double zp_m2 = oracle::zeta_prime(-2.0, 96, 40).d();
  CHECK(dirac_zeta_prime_zero(2, kPrec).value.to_double() == doctest::Approx(8.0 * zp_m1).epsilon(1e-14));
  CHECK(dirac_zeta_prime_zero(2, kPrec).value.to_double() == doctest::Approx(-1.323369149603).epsilon(1e-11));
  CHECK(dirac_zeta_prime_zero(3, kPrec).value.to_double() == doctest::Approx(std::log(2.0) - 3.0 * zp_m2).epsilon(1e-14));
  double prev = std::fabs(dirac_zeta_prime_zero(4, kPrec).value.to_double());
  for (int n = 6; n <= 42; n += 2) {
    const double cur = std::fabs(dirac_zeta_prime_zero(n, kPrec).value.to_double());
    CHECK(cur < prev);
    prev = cur;
  }
  for (int n = 5; n <= 41; n += 2) {
    CHECK(std::fabs(dirac_zeta_prime_zero(n + 2, kPrec).value.to_double()) <
          std::fabs(dirac_zeta_prime_zero(n, kPrec).value.to_double()));
  }
  auto big = dirac_zeta_prime_zero(120, 64);
  CHECK(big.error.to_double() < std::fabs(big.value.to_double()) * 1e-15);
}

TEST_CASE("determinant report") {
  auto r2 = dirac_det(2, kPrec);
  CHECK(r2.phase.to_double() == doctest::Approx(-M_PI / 6.0));
  CHECK(r2.abs_det.to_double() == doctest::Approx(1.9380543836).epsilon(1e-9));
  auto r3 = dirac_det(3, kPrec);
  CHECK(r3.phase.is_zero());
  CHECK(r3.abs_det < Real(1L, 64));
  CHECK(r3.distance_to_one.to_double() == doctest::Approx(1.0 - r3.abs_det.to_double()));
  auto r6 = dirac_det(6, kPrec);
  const double d = r6.abs_det.to_double();
  const double ph = r6.phase.to_double();
  CHECK(r6.distance_to_one.to_double() == doctest::Approx(std::abs(std::polar(d, ph) - 1.0)).epsilon(1e-13));
  CHECK(dirac_det(60, kPrec).distance_to_one.to_double() < 1e-8);
  CHECK_THROWS_AS(dirac_det(1, kPrec), std::invalid_argument);
}

TEST_CASE("spectral series oracle") {
  auto s22 = dirac_spectral_series(2, Real(2L, kPrec), kPrec);
  CHECK(s22.value.to_double() == doctest::Approx(4.0 * z(3)).epsilon(1e-14));
  auto s44 = dirac_spectral_series(4, Real(4L, kPrec), kPrec);
  CHECK(s44.value.to_double() == doctest::Approx(4.0 / 3.0 * (z(5) - z(7))).epsilon(1e-14));
  for (int n = 2; n <= 10; ++n) {
    const Real s(static_cast<long>(n), kPrec);
    auto ser = dirac_spectral_series(n, s, kPrec);
    Real f = dirac_zeta(n, s, kPrec);
    CHECK((abs(f - ser.value) / abs(f)).to_double() <= 1e-10);
    CHECK(ser.value.to_double() == doctest::Approx(brute_series(n, n)).epsilon(1e-8));
  }
  auto s54 = dirac_spectral_series(5, Real(4L, kPrec), kPrec);
  CHECK(std::fabs((s54.value - dirac_zeta(5, Real(4L, kPrec), kPrec)).to_double()) <= s54.error.to_double() + 1e-25);
  CHECK_THROWS_AS(dirac_spectral_series(4, Real(2L, kPrec), kPrec), std::domain_error);
}

TEST_CASE("bound sequences") {
  auto b = bound_sequences(25, kPrec);
  REQUIRE(b.a.size() == 25);
  REQUIRE(b.a_ratio.size() == 24);
  CHECK(b.a[0].to_double() == doctest::Approx(2.0 / (M_PI * M_PI)));
  for (std::size_t i = 0; i < b.a_ratio.size(); ++i) {
    CHECK(b.a_ratio[i].to_double() <= 5.0 / 9.0);
    CHECK(b.b_ratio[i].to_double() <= 5.0 / 9.0);
    CHECK(b.a_ratio[i].to_double() == doctest::Approx(b.a[i + 1].to_double() / b.a[i].to_double()));
  }
  for (bool v : b.zeta_zero_within) CHECK(v);
  for (bool v : b.zeta_prime_within) CHECK(v);
}
