#include "spheredet/special_values.hpp"

#include <algorithm>
#include <string>

#include "spheredet/coeffs.hpp"

namespace spheredet::special {

namespace {

constexpr Precision kGuardBits = 32;

// B_2k for k = 0..kmax from tangent numbers (Brent-Harvey recurrence),
// B_2k = (-1)^{k-1} 2k T_k / (2^{2k} (2^{2k} - 1)).
std::vector<Rational> even_bernoulli_table(int kmax) {
  std::vector<Integer> t(static_cast<std::size_t>(kmax + 1));
  std::vector<Rational> b(static_cast<std::size_t>(kmax + 1));
  b[0] = 1;
  if (kmax == 0) return b;
  t[1] = 1;
  for (int k = 2; k <= kmax; ++k) t[k] = (k - 1) * t[k - 1];
  for (int k = 2; k <= kmax; ++k) {
    for (int j = k; j <= kmax; ++j) t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
  }
  for (int k = 1; k <= kmax; ++k) {
    Integer four_k = Integer(1) << (2 * k);
    Rational v(Integer(2 * k) * t[k], four_k * (four_k - 1));
    v.canonicalize();
    b[k] = (k % 2 == 1) ? v : Rational(-v);
  }
  return b;
}

class BernoulliMemo {
 public:
  Rational even(int k) {
    {
      std::shared_lock lock(mutex_);
      if (k < static_cast<int>(table_.size())) return table_[static_cast<std::size_t>(k)];
    }
    std::unique_lock lock(mutex_);
    if (k >= static_cast<int>(table_.size())) {
      const int target = std::max(k, 2 * static_cast<int>(table_.size()));
      table_ = even_bernoulli_table(std::max(target, 16));
    }
    return table_[static_cast<std::size_t>(k)];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<Rational> table_;
};

BernoulliMemo& bernoulli_memo() {
  static BernoulliMemo memo;
  return memo;
}

Real two_pi(Precision prec) { return const_pi(prec) * 2L; }

}  // namespace

Rational bernoulli(int m) {
  if (m < 0) throw std::invalid_argument("bernoulli: m must be >= 0");
  if (m == 1) return Rational(-1, 2);
  if (m % 2 == 1) return Rational(0);
  return bernoulli_memo().even(m / 2);
}

Rational zeta_nonpositive(int m) {
  if (m > 0) throw std::invalid_argument("zeta_nonpositive: m must be <= 0");
  if (m == 0) return Rational(-1, 2);
  const int q = 1 - m;  // zeta(1-q) = -B_q / q for q >= 2
  Rational v = -bernoulli(q) / q;
  v.canonicalize();
  return v;
}

Rational zeta_neg_odd(int alpha) {
  if (alpha < 0) throw std::invalid_argument("zeta_neg_odd: alpha must be >= 0");
  return zeta_nonpositive(-2 * alpha - 1);
}

Real zeta_pos(int m, Precision prec) {
  if (m < 2) throw std::invalid_argument("zeta_pos: m must be >= 2");
  const Precision wp = prec + kGuardBits;
  if (m % 2 == 0) {
    // zeta(2j) = (-1)^{j+1} B_2j (2 pi)^2j / (2 (2j)!)
    Rational c = bernoulli(m) / (2 * Rational(factorial(static_cast<unsigned long>(m))));
    if ((m / 2) % 2 == 0) c = -c;
    Real v = pow(two_pi(wp), static_cast<long>(m)) * c;
    return v.with_precision(prec);
  }
  return hurwitz(Real(static_cast<long>(m), wp), Real(1L, wp), wp).value.with_precision(prec);
}

Real zeta_prime_pos(int m, Precision prec) {
  if (m < 2) throw std::invalid_argument("zeta_prime_pos: m must be >= 2");
  const Precision wp = prec + kGuardBits;
  return hurwitz_prime(Real(static_cast<long>(m), wp), Real(1L, wp), wp).value.with_precision(prec);
}

Real zeta_prime_neg_odd(int alpha, Precision prec) {
  if (alpha < 0) throw std::invalid_argument("zeta_prime_neg_odd: alpha must be >= 0");
  const Precision wp = prec + kGuardBits;
  const int m = 2 * alpha + 2;
  // 2 (-1)^a (2 pi)^{-2a-2} (2a+1)! zeta'(2a+2)
  Real first = zeta_prime_pos(m, wp) / pow(two_pi(wp), static_cast<long>(m));
  first *= Rational(2 * factorial(static_cast<unsigned long>(m - 1)));
  if (alpha % 2 == 1) first = -first;
  // [log 2 pi + gamma - H_{2a+1}] zeta(-2a-1)
  Real bracket = log_two_pi(wp) + euler_gamma(wp) - Real(coeffs::harmonic(m - 1), wp);
  Real second = bracket * zeta_neg_odd(alpha);
  return (first + second).with_precision(prec);
}

Real zeta_prime_neg_even(int alpha, Precision prec) {
  if (alpha < 1) throw std::invalid_argument("zeta_prime_neg_even: alpha must be >= 1");
  const Precision wp = prec + kGuardBits;
  // pi (-1)^a (2 pi)^{-2a-1} (2a)! zeta(2a+1)
  Real v = const_pi(wp) * zeta_pos(2 * alpha + 1, wp) / pow(two_pi(wp), static_cast<long>(2 * alpha + 1));
  v *= Rational(factorial(static_cast<unsigned long>(2 * alpha)));
  if (alpha % 2 == 1) v = -v;
  return v.with_precision(prec);
}

Real zeta_real(const Real& s, Precision prec) {
  const Precision wp = prec + kGuardBits;
  Real sw = s.with_precision(wp);
  if (mpfr_integer_p(sw.raw()) && sw.sign() <= 0 && sw > Real(-100000L, 64)) {
    return Real(zeta_nonpositive(static_cast<int>(sw.to_double())), prec);
  }
  return hurwitz(sw, Real(1L, wp), wp).value.with_precision(prec);
}

Real euler_gamma(Precision prec) { return const_euler(prec + kGuardBits).with_precision(prec); }

Real log_two_pi(Precision prec) { return log(two_pi(prec + kGuardBits)).with_precision(prec); }

Real zeta_half(const Real& s, Precision prec) {
  if (s == Real(1L, s.precision())) throw PoleError("zeta_half: pole at s = 1");
  const Precision wp = prec + kGuardBits;
  Real sw = s.with_precision(wp);
  Real factor = pow(Real(2L, wp), sw) - Real(1L, wp);
  if (factor.is_zero()) return Real(prec);
  return (factor * zeta_real(sw, wp)).with_precision(prec);
}

Real zeta_bound_constant(Precision prec) { return zeta_pos(2, prec); }

Real zeta_prime_bound_constant(Precision prec) {
  const Precision wp = prec + kGuardBits;
  Real v = abs(zeta_prime_pos(2, wp)) + log_two_pi(wp) / 2L;
  return v.with_precision(prec);
}

template <typename Compute>
Real SpecialValueCache::lookup(SpecialTag tag, long index, Precision prec, Compute&& compute) {
  const auto key = std::make_pair(tag, index);
  {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second.precision() >= prec) return it->second.with_precision(prec);
  }
  Real fresh = compute(prec);
  std::unique_lock lock(mutex_);
  auto [it, inserted] = entries_.try_emplace(key, fresh);
  if (!inserted && it->second.precision() < fresh.precision()) it->second = fresh;
  return fresh;
}

Real SpecialValueCache::zeta_pos(int m, Precision prec) {
  return lookup(SpecialTag::ZetaAt, m, prec, [m](Precision p) { return special::zeta_pos(m, p); });
}

Real SpecialValueCache::zeta_prime_pos(int m, Precision prec) {
  return lookup(SpecialTag::ZetaPrimeAt, m, prec, [m](Precision p) { return special::zeta_prime_pos(m, p); });
}

Real SpecialValueCache::zeta_prime_neg_odd(int alpha, Precision prec) {
  return lookup(SpecialTag::ZetaPrimeNegOdd, alpha, prec,
                [alpha](Precision p) { return special::zeta_prime_neg_odd(alpha, p); });
}

Real SpecialValueCache::zeta_prime_neg_even(int alpha, Precision prec) {
  return lookup(SpecialTag::ZetaPrimeNegEven, alpha, prec,
                [alpha](Precision p) { return special::zeta_prime_neg_even(alpha, p); });
}

Real SpecialValueCache::euler_gamma(Precision prec) {
  return lookup(SpecialTag::EulerGamma, 0, prec, [](Precision p) { return special::euler_gamma(p); });
}

Real SpecialValueCache::log_two_pi(Precision prec) {
  return lookup(SpecialTag::LogTwoPi, 0, prec, [](Precision p) { return special::log_two_pi(p); });
}

std::size_t SpecialValueCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

Precision SpecialValueCache::stored_precision(SpecialTag tag, long index) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(std::make_pair(tag, index));
  return it == entries_.end() ? 0 : it->second.precision();
}

SpecialValueCache& shared_cache() {
  static SpecialValueCache cache;
  return cache;
}

}  // namespace spheredet::special
