#pragma once

// Value-semantic arbitrary-precision real backed by MPFR.
//
// Every Real carries its own precision in bits. Binary operators produce a
// result at the larger of the operand precisions; mixed operations with
// machine integers or rationals use the Real operand's precision.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "spheredet/rational.hpp"

namespace spheredet {

using Precision = mpfr_prec_t;

class Real {
 public:
  explicit Real(Precision prec = 64);
  Real(long v, Precision prec);
  Real(int v, Precision prec) : Real(static_cast<long>(v), prec) {}
  Real(double v, Precision prec);
  Real(const Rational& q, Precision prec);
  Real(const Integer& z, Precision prec);

  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  // Parses a decimal literal ("1.5", "-3e-4").
  static Real parse(std::string_view text, Precision prec);

  Precision precision() const { return mpfr_get_prec(v_); }
  // Copy rounded to a different precision.
  Real with_precision(Precision prec) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long o);
  Real& operator/=(long o);
  Real& operator*=(const Rational& o);

  Real operator-() const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Base-2 exponent e with 2^(e-1) <= |x| < 2^e; very negative for zero.
  long exponent2() const;
  // log2|x| as a double, valid far outside the double exponent range.
  double log2_abs() const;

  // Scientific notation with the given number of significant digits.
  std::string to_string(int digits) const;

 private:
  void ensure_precision_at_least(Precision p);
  mpfr_t v_;
};

Real operator+(Real a, const Real& b);
Real operator-(Real a, const Real& b);
Real operator*(Real a, const Real& b);
Real operator/(Real a, const Real& b);
Real operator*(Real a, long b);
Real operator*(long a, Real b);
Real operator/(Real a, long b);
Real operator*(Real a, const Rational& b);
Real operator*(const Rational& a, Real b);

bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);
bool operator==(const Real& a, const Real& b);

Real abs(Real x);
Real sqrt(Real x);
Real log(Real x);
Real exp(Real x);
Real atan(Real x);
Real sin(Real x);
Real cos(Real x);
Real lngamma(Real x);
Real pow(Real base, const Real& e);
Real pow(Real base, long e);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real const_pi(Precision prec);
Real const_euler(Precision prec);
Real const_log2(Precision prec);

// 2^e exactly.
Real pow2(long e, Precision prec);

}  // namespace spheredet
