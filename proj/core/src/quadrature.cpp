#include "spheredet/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

namespace spheredet::quad {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
constexpr std::array<double, 4> kGaussWeights = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                                 0.381830050505118944950369775488975,
                                                 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  Complex value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod(const Integrand& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const Complex fc = f(centre);
  Complex k = kKronrodWeights[7] * fc;
  Complex g = kGaussWeights[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kKronrodNodes[static_cast<std::size_t>(i)];
    const Complex pair = f(centre - dx) + f(centre + dx);
    k += kKronrodWeights[static_cast<std::size_t>(i)] * pair;
    if (i % 2 == 1) g += kGaussWeights[static_cast<std::size_t>(i / 2)] * pair;
  }
  k *= half;
  g *= half;
  return {lo, hi, k, std::abs(k - g)};
}

}  // namespace

Result integrate_pieces(const Integrand& f, std::span<const double> points, const Options& opts) {
  Result out;
  if (points.size() < 2) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> queue;
  Complex total{};
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i] == points[i + 1]) continue;
    Segment s = kronrod(f, points[i], points[i + 1]);
    out.evaluations += 15;
    total += s.value;
    total_error += s.error;
    queue.push(s);
  }
  while (!queue.empty()) {
    const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
    if (total_error <= target) {
      out.converged = true;
      break;
    }
    if (out.evaluations + 30 > opts.max_evaluations) break;
    Segment worst = queue.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;  // interval exhausted in double
    queue.pop();
    Segment left = kronrod(f, worst.lo, mid);
    Segment right = kronrod(f, mid, worst.hi);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }
  // Re-sum to shed drift from the incremental updates.
  total = {};
  total_error = 0.0;
  std::vector<Segment> rest;
  while (!queue.empty()) {
    rest.push_back(queue.top());
    queue.pop();
  }
  for (const auto& s : rest) {
    total += s.value;
    total_error += s.error;
  }
  if (!rest.empty()) {
    out.worst_lo = rest.front().lo;
    out.worst_hi = rest.front().hi;
  }
  out.value = total;
  out.error = total_error;
  if (!out.converged) out.converged = total_error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  return out;
}

Result integrate(const Integrand& f, double lo, double hi, const Options& opts) {
  const std::array<double, 2> pts{lo, hi};
  return integrate_pieces(f, pts, opts);
}

}  // namespace spheredet::quad
