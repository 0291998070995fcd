#include <benchmark/benchmark.h>

#include "spheredet/barnes.hpp"
#include "spheredet/coeffs.hpp"
#include "spheredet/dirac.hpp"
#include "spheredet/laplace.hpp"
#include "spheredet/special_values.hpp"

using namespace spheredet;

namespace {

void BM_HurwitzPrime(benchmark::State& state) {
  const auto prec = static_cast<Precision>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(special::hurwitz_prime_at(-5, fraction(7, 2), prec));
}
BENCHMARK(BM_HurwitzPrime)->Arg(128)->Arg(512);

void BM_DiracDet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dirac::dirac_det(n, 128));
}
BENCHMARK(BM_DiracDet)->Arg(10)->Arg(60);

// Uncached decomposition cost: the memo is per (n, a), so vary the shift.
void BM_BarnesDecomposition(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(barnes::barnes_prime_zero(n, Rational(n), 128));
}
BENCHMARK(BM_BarnesDecomposition)->Arg(12)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_BarnesContour(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Rational a(n);
  for (auto _ : state) benchmark::DoNotOptimize(barnes::barnes_contour_prime_zero(n, a, barnes::default_contour(n, a)));
}
BENCHMARK(BM_BarnesContour)->Arg(6)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_YamabeDet(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto p = laplace::make_params(n, laplace::Operator::Yamabe);
  for (auto _ : state) benchmark::DoNotOptimize(laplace::laplace_det(p, 128));
}
BENCHMARK(BM_YamabeDet)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_OrdinaryRescaled(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(laplace::rescaled_det(n, 64));
}
BENCHMARK(BM_OrdinaryRescaled)->Arg(51)->Arg(151)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
