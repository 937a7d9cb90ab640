#include <benchmark/benchmark.h>

#include "chebzero/bergman.hpp"
#include "chebzero/chebyshev.hpp"
#include "chebzero/currents.hpp"
#include "chebzero/ensemble.hpp"
#include "chebzero/zeros.hpp"

using namespace chebzero;

namespace {

const Basis& circle_basis() {
  static const Basis b = minimax_basis(ModelSet::unit_circle(), 160);
  return b;
}

void BM_IntervalMinimax(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const MultiIndexTable table(1, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimax_monic(ModelSet::interval(-0.5, 1.5), table, static_cast<std::size_t>(n)));
  }
}
BENCHMARK(BM_IntervalMinimax)->Arg(10)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_TwoVariableMinimax(benchmark::State& state) {
  const MultiIndexTable table(2, 6);
  const ModelSet set = ModelSet::product(SetFactor::disk(), SetFactor::interval(-1, 1));
  for (auto _ : state) benchmark::DoNotOptimize(minimax_monic(set, table, table.size() - 2));
}
BENCHMARK(BM_TwoVariableMinimax)->Unit(benchmark::kMillisecond);

void BM_Roots(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = sample(CoefficientMeasure::gaussian(), circle_basis().count_for_degree(n), 1);
  const RandomPolynomial f(circle_basis(), n, a);
  for (auto _ : state) benchmark::DoNotOptimize(roots(f));
}
BENCHMARK(BM_Roots)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

void BM_PairPotential(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  const auto a = sample(CoefficientMeasure::gaussian(), circle_basis().count_for_degree(80), 2);
  const RandomPolynomial f(circle_basis(), 80, a);
  const auto chi = TestFunction::plateau(Point(cplx(0, 0)), 1.5, 2.0, 1.0, 1);
  for (auto _ : state) benchmark::DoNotOptimize(pair_potential(f, 80, chi, grid, false));
}
BENCHMARK(BM_PairPotential)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Gamma(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Point z(cplx(0.7, 0.9));
  for (auto _ : state) benchmark::DoNotOptimize(gamma(circle_basis(), n, z));
}
BENCHMARK(BM_Gamma)->Arg(40)->Arg(160);

void BM_MomentEstimate(benchmark::State& state) {
  std::vector<cplx> v(21, cplx(1.0 / std::sqrt(21.0), 0.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(moment_estimate(CoefficientMeasure::gaussian(), 2.0, v, 10000, 3));
  }
}
BENCHMARK(BM_MomentEstimate)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
