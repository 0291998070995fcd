#include <doctest.h>

#include <cmath>
#include <complex>

#include "spheredet/asymptotics.hpp"

using namespace spheredet;
using namespace spheredet::asymptotics;

namespace {

const TestFunction& by_name(const std::string& name) {
  for (const auto& f : catalog()) {
    if (f.name == name) return f;
  }
  throw std::out_of_range(name);
}

// Plain midpoint rule on a fine grid, no subdivision logic shared with the library.
std::complex<double> midpoint(int n, double a, double b, const TestFunction& phi, long steps) {
  std::complex<double> acc = 0.0;
  const double h = (b - a) / steps;
  for (long i = 0; i < steps; ++i) {
    const double x = a + (i + 0.5) * h;
    acc += std::pow(std::complex<double>(-1.0, std::exp(-x)), -n) * phi.value(x);
  }
  return acc * h;
}

}  // namespace

TEST_CASE("test functions and derivatives") {
  const auto& phi1 = by_name("phi1");
  for (double x : {0.3, 1.0, 2.7, 5.0}) {
    const double h = 1e-6;
    const double fd = (phi1.value(x + h) - phi1.value(x - h)) / (2 * h);
    CHECK(phi1.derivative(x) == doctest::Approx(fd).epsilon(1e-7));
    const double c = M_PI * M_PI / 4;
    CHECK(phi1.value(x) == doctest::Approx(x * 0.5 * std::log(x * x + c) / (x * x + c)));
  }
  CHECK(by_name("constant").value(3.0) == 1.0);
  for (const auto& f : catalog()) CHECK(certify_monotone(f, f.default_a, std::log(160.0)).holds);
  TestFunction bad{"decaying", 0, 0, 3, 0.01, 0.0};
  CHECK_FALSE(certify_monotone(bad, 0.0, 3.0).holds);
}

TEST_CASE("constant function at n = 40") {
  auto inst = lemma_bound_check(make_instance(40, 0.0, std::log(40.0), by_name("constant")));
  CHECK(inst.bound == doctest::Approx(2 * M_PI).epsilon(1e-12));
  CHECK(inst.holds);
  CHECK(inst.pieces == inst.n_ab + 1);
  auto ref = midpoint(40, 0.0, std::log(40.0), by_name("constant"), 400000);
  CHECK(std::abs(inst.integral - ref) < 1e-8);
}

TEST_CASE("bound and integral shrink together") {
  const auto& c = by_name("inverse-quadratic");
  auto small = lemma_bound_check(make_instance(10, 0.0, std::log(10.0), c));
  auto large = lemma_bound_check(make_instance(80, 0.0, std::log(80.0), c));
  CHECK(large.bound < small.bound);
  CHECK(std::abs(large.integral) < std::abs(small.integral));
  CHECK(small.margin >= 0.0);
  CHECK(large.margin >= 0.0);
}

TEST_CASE("phi1 at n = 60") {
  auto inst = lemma_bound_check(make_instance(60, 1.0, std::log(60.0), by_name("phi1")));
  CHECK(inst.margin >= 0.0);
  CHECK(inst.n_ab == static_cast<long>(std::floor(60 / M_PI * (inst.s_a - inst.s_b))));
  auto ref = midpoint(60, 1.0, std::log(60.0), by_name("phi1"), 400000);
  CHECK(std::abs(inst.integral - ref) < 1e-8);
}

TEST_CASE("battery") {
  auto all = lemma_battery({10, 20, 40, 80, 160});
  CHECK(all.size() == 5 * catalog().size());
  for (const auto& inst : all) {
    CHECK_MESSAGE(inst.holds, inst.phi.name, " n=", inst.n);
    CHECK(inst.pieces == inst.n_ab + 1);
    CHECK(inst.n_ab >= 0);
  }
  CHECK_THROWS_AS(lemma_bound_check(make_instance(2, 2.0, 3.0, by_name("constant"))), std::invalid_argument);
  CHECK_THROWS_AS(make_instance(10, 2.0, 1.0, by_name("constant")), std::invalid_argument);
}

TEST_CASE("no-oscillation integral") {
  auto rows = no_oscillation_divergence_check({100.0, 1000.0, 10000.0});
  for (const auto& r : rows) {
    CHECK(r.within);
    CHECK(r.lower <= r.upper);
  }
  CHECK(rows[2].value > rows[0].value);
  CHECK_THROWS_AS(no_oscillation_integral(10.0), std::invalid_argument);
}

TEST_CASE("mod-4 pattern") {
  auto rep = mod4_pattern_scan(2, 60, 128);
  CHECK(rep.rows.size() == 59);
  CHECK(rep.violations.empty());
}

TEST_CASE("rate fit") {
  std::vector<FitPoint> pts;
  for (int n = 1; n <= 40; ++n) pts.push_back({double(n), 7.0 * std::pow(0.8, n)});
  auto fit = rate_fit(pts, FitModel::Exponential, 1, 40);
  CHECK(std::fabs(fit.slope - std::log(0.8)) < 1e-3);
  CHECK(fit.points == 40);
  CHECK(fit.residual_norm < 1e-12);
  std::vector<FitPoint> pw;
  for (int n = 2; n <= 100; ++n) pw.push_back({double(n), 3.0 * std::pow(n, -1.5)});
  CHECK(rate_fit(pw, FitModel::PowerLaw, 2, 100).slope == doctest::Approx(-1.5));
  auto window = rate_fit(pts, FitModel::Exponential, 10, 20);
  CHECK(window.points == 11);
  CHECK(window.window_lo == 10);
  CHECK_THROWS_AS(rate_fit(pts, FitModel::Exponential, 5, 7), std::invalid_argument);
}

TEST_CASE("limit reports") {
  auto d = limit_report(LimitTarget::Dirac, {20, 40}, 128);
  CHECK(d[1].gap < d[0].gap);
  auto y = limit_report(LimitTarget::Yamabe, {30}, 128);
  CHECK(y[0].gap <= 1e-6);
  auto o = limit_report(LimitTarget::OrdinaryRescaled, {11}, 64);
  CHECK(o[0].limit == doctest::Approx(1.0 + std::log(2 * M_PI)));
}
