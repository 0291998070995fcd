#include "spheredet/coeffs.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>

namespace spheredet::coeffs {

namespace {

// Tables are heap-allocated and never erased so returned references stay
// valid for the lifetime of the process.
class TableMemo {
 public:
  template <typename Build>
  const CoeffTable& get(CoeffKind kind, int index, Build&& build) {
    const auto key = std::make_pair(static_cast<int>(kind), index);
    {
      std::shared_lock lock(mutex_);
      auto it = tables_.find(key);
      if (it != tables_.end()) return *it->second;
    }
    auto table = std::make_unique<CoeffTable>(CoeffTable{kind, index, build()});
    std::unique_lock lock(mutex_);
    auto [it, inserted] = tables_.try_emplace(key, std::move(table));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::pair<int, int>, std::unique_ptr<CoeffTable>> tables_;
};

TableMemo& memo() {
  static TableMemo instance;
  return instance;
}

// One step of c_{a,k+1} = c_{a-1,k} - root_k * c_{a,k}.
std::vector<Rational> multiply_by_root(const std::vector<Rational>& c, const Rational& root) {
  std::vector<Rational> next(c.size() + 1);
  for (std::size_t a = 0; a < next.size(); ++a) {
    Rational v(0);
    if (a >= 1) v += c[a - 1];
    if (a < c.size()) v -= root * c[a];
    next[a] = v;
  }
  return next;
}

}  // namespace

std::vector<Rational> expand_roots(const std::vector<Rational>& roots) {
  std::vector<Rational> c{Rational(1)};
  for (const auto& r : roots) c = multiply_by_root(c, r);
  return c;
}

Rational evaluate(const std::vector<Rational>& coeffs, const Rational& x) {
  Rational acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

const CoeffTable& dirac_coeffs_even(int k) {
  if (k < 1) throw std::invalid_argument("dirac_coeffs_even: k must be >= 1");
  return memo().get(CoeffKind::DiracEven, k, [k] {
    if (k == 1) return std::vector<Rational>{Rational(1)};
    const auto& prev = dirac_coeffs_even(k - 1).coeffs;
    const long p = k - 1;
    return multiply_by_root(prev, Rational(p * p));
  });
}

const CoeffTable& dirac_coeffs_odd(int k) {
  if (k < 1) throw std::invalid_argument("dirac_coeffs_odd: k must be >= 1");
  return memo().get(CoeffKind::DiracOdd, k, [k] {
    if (k == 1) return std::vector<Rational>{Rational(1)};
    const auto& prev = dirac_coeffs_odd(k - 1).coeffs;
    // (k - 3/2)^2 = (2k-3)^2 / 4
    const long twice = 2L * (k - 1) - 1;
    return multiply_by_root(prev, Rational(twice * twice, 4));
  });
}

const CoeffTable& laplace_coeffs(int n) {
  if (n < 2) throw std::invalid_argument("laplace_coeffs: n must be >= 2");
  return memo().get(CoeffKind::LaplacePoly, n, [n] {
    std::vector<Rational> c{Rational(1)};
    // factor (x + (n-1)/2 - p) has root p - (n-1)/2
    for (int p = 1; p <= n - 2; ++p) {
      Rational root(2L * p - (n - 1), 2);
      root.canonicalize();
      c = multiply_by_root(c, root);
    }
    return c;
  });
}

Rational big_n(int n, int j) {
  if (n < 2 || j < 1 || j > n / 2) {
    throw std::out_of_range("big_n: index out of range (n=" + std::to_string(n) + ", j=" + std::to_string(j) + ")");
  }
  const auto& nt = laplace_coeffs(n).coeffs;
  Rational r = 2 * nt[static_cast<std::size_t>(2 * j - 2)] / Rational(factorial(static_cast<unsigned long>(n - 1)));
  r.canonicalize();
  return r;
}

Rational odd_harmonic(int j) {
  if (j < 1) throw std::invalid_argument("odd_harmonic: j must be >= 1");
  Rational s(0);
  for (int i = 0; i < j; ++i) s += Rational(1, 2 * i + 1);
  s.canonicalize();
  return s;
}

Rational harmonic(int n) {
  if (n < 0) throw std::invalid_argument("harmonic: n must be >= 0");
  Rational s(0);
  for (int i = 1; i <= n; ++i) s += Rational(1, i);
  s.canonicalize();
  return s;
}

}  // namespace spheredet::coeffs
