#include <benchmark/benchmark.h>

#include <vector>

#include "optomech/fock.hpp"
#include "optomech/wigner.hpp"

using namespace optomech;

namespace {

DensityMatrix pure_density(const StateVector& psi) {
  return {psi.dim(), psi.amplitudes * psi.amplitudes.adjoint()};
}

// Phase-space evaluation of a displaced Gaussian; cost scales with
// grid points × dim².
void BM_WignerCoherent(benchmark::State& state) {
  const DensityMatrix rho = pure_density(coherent_state({2.0, 0.0}, 32));
  const int count = static_cast<int>(state.range(0));
  const auto axis = uniform_axis(-5.0, 5.0, count);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner(rho, axis, axis));
  }
}
BENCHMARK(BM_WignerCoherent)->Arg(61)->Arg(121)->Unit(benchmark::kMillisecond);

// Fock state |4>: interference rings and negative regions exercise the
// Laguerre recurrence at higher orders.
void BM_WignerFock(benchmark::State& state) {
  const DensityMatrix rho = pure_density(number_state(4, 16));
  const auto axis = uniform_axis(-5.0, 5.0, 121);
  for (auto _ : state) {
    benchmark::DoNotOptimize(wigner(rho, axis, axis));
  }
}
BENCHMARK(BM_WignerFock)->Unit(benchmark::kMillisecond);

void BM_PositionDensity(benchmark::State& state) {
  const DensityMatrix rho = pure_density(coherent_state({2.0, 0.0}, 32));
  const auto axis = uniform_axis(-5.0, 5.0, 121);
  for (auto _ : state) {
    benchmark::DoNotOptimize(position_density(rho, axis));
  }
}
BENCHMARK(BM_PositionDensity);

}  // namespace
