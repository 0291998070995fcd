#include "spheredet/real.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spheredet {

Real::Real(Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(long v, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, MPFR_RNDN);
}

Real::Real(double v, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(const Rational& q, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Integer& z, Precision prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::parse(std::string_view text, Precision prec) {
  Real r(prec);
  std::string s(text);
  char* end = nullptr;
  if (mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN) != 0 && end == s.c_str()) {
    throw std::invalid_argument("not a decimal number: " + s);
  }
  if (end == s.c_str() || *end != '\0') throw std::invalid_argument("not a decimal number: " + s);
  return r;
}

Real Real::with_precision(Precision prec) const {
  Real r(prec);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

void Real::ensure_precision_at_least(Precision p) {
  if (precision() < p) mpfr_prec_round(v_, p, MPFR_RNDN);
}

Real& Real::operator+=(const Real& o) {
  ensure_precision_at_least(o.precision());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& o) {
  ensure_precision_at_least(o.precision());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& o) {
  ensure_precision_at_least(o.precision());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& o) {
  ensure_precision_at_least(o.precision());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long o) {
  mpfr_mul_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long o) {
  mpfr_div_si(v_, v_, o, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Rational& o) {
  mpfr_mul_q(v_, v_, o.get_mpq_t(), MPFR_RNDN);
  return *this;
}

Real Real::operator-() const {
  Real r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

long Real::exponent2() const {
  if (!mpfr_regular_p(v_)) return mpfr_zero_p(v_) ? -(1L << 40) : (1L << 40);
  return mpfr_get_exp(v_);
}

double Real::log2_abs() const {
  if (mpfr_zero_p(v_)) return -HUGE_VAL;
  if (!mpfr_number_p(v_)) return HUGE_VAL;
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

std::string Real::to_string(int digits) const {
  digits = std::max(digits, 1);
  if (mpfr_zero_p(v_)) return "0";
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

Real operator+(Real a, const Real& b) { return a += b; }
Real operator-(Real a, const Real& b) { return a -= b; }
Real operator*(Real a, const Real& b) { return a *= b; }
Real operator/(Real a, const Real& b) { return a /= b; }
Real operator*(Real a, long b) { return a *= b; }
Real operator*(long a, Real b) { return b *= a; }
Real operator/(Real a, long b) { return a /= b; }
Real operator*(Real a, const Rational& b) { return a *= b; }
Real operator*(const Rational& a, Real b) { return b *= a; }

bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.raw(), b.raw()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.raw(), b.raw()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.raw(), b.raw()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.raw(), b.raw()) != 0; }
bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }

Real abs(Real x) {
  mpfr_abs(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}

Real sqrt(Real x) {
  mpfr_sqrt(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}

Real log(Real x) {
  mpfr_log(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}

Real exp(Real x) {
  mpfr_exp(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}

Real atan(Real x) {
  mpfr_atan(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}

Real sin(Real x) {
  mpfr_sin(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}

Real cos(Real x) {
  mpfr_cos(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}

Real lngamma(Real x) {
  mpfr_lngamma(x.raw(), x.raw(), MPFR_RNDN);
  return x;
}

Real pow(Real base, const Real& e) {
  if (base.precision() < e.precision()) base = base.with_precision(e.precision());
  mpfr_pow(base.raw(), base.raw(), e.raw(), MPFR_RNDN);
  return base;
}

Real pow(Real base, long e) {
  mpfr_pow_si(base.raw(), base.raw(), e, MPFR_RNDN);
  return base;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real const_pi(Precision prec) {
  Real r(prec);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

Real const_euler(Precision prec) {
  Real r(prec);
  mpfr_const_euler(r.raw(), MPFR_RNDN);
  return r;
}

Real const_log2(Precision prec) {
  Real r(prec);
  mpfr_const_log2(r.raw(), MPFR_RNDN);
  return r;
}

Real pow2(long e, Precision prec) {
  Real r(1L, prec);
  mpfr_mul_2si(r.raw(), r.raw(), e, MPFR_RNDN);
  return r;
}

}  // namespace spheredet
