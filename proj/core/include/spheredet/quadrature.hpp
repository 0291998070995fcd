#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for complex-valued
// integrands of one real variable.

#include <complex>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace spheredet::quad {

using Complex = std::complex<double>;
using Integrand = std::function<Complex(double)>;

struct Options {
  double abs_tol = 1e-14;
  double rel_tol = 1e-13;
  long max_evaluations = 400000;
};

struct Result {
  Complex value{};
  double error = 0.0;  // Kronrod-vs-Gauss estimate, heuristic
  long evaluations = 0;
  bool converged = false;
  // Subinterval carrying the largest error estimate at exit.
  double worst_lo = 0.0;
  double worst_hi = 0.0;
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, Result partial) : std::runtime_error(what), partial_(partial) {}
  const Result& partial() const { return partial_; }

 private:
  Result partial_;
};

Result integrate(const Integrand& f, double lo, double hi, const Options& opts = {});

// Integrates over [points[0], points.back()] seeding the adaptive queue with
// the given breakpoints, so every piece is refined independently.
Result integrate_pieces(const Integrand& f, std::span<const double> points, const Options& opts = {});

}  // namespace spheredet::quad
