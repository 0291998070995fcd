#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace spheredet {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "p/q" or "-p/q" into a canonical rational.
std::optional<Rational> parse_rational(std::string_view text);

std::string to_string(const Rational& q);

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

// p/q in lowest terms. mpq_class compares by representation, so fractions
// built from computed integers must be canonical.
inline Rational fraction(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational pow(const Rational& base, unsigned long e) {
  Rational r(1);
  for (unsigned long i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace spheredet
