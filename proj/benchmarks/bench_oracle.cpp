#include <benchmark/benchmark.h>

#include <vector>

#include "optomech/fock.hpp"
#include "optomech/oracle.hpp"

using namespace optomech;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> grid(double t_end, int count) {
  std::vector<double> t(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) t[static_cast<size_t>(i)] = t_end * i / (count - 1);
  return t;
}

SystemParams driven() {
  SystemParams p;
  p.omega_c = 10.0;
  p.omega_m = 1.0;
  p.g0 = 0.1;
  p.g1 = 0.01;
  p.Omega = 0.25;
  p.omega_d = 2.5;
  return p;
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const SystemParams p = driven();
  const int dim_field = static_cast<int>(state.range(0));
  const int dim_mech = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_hamiltonian(p, dim_field, dim_mech, 0.7));
  }
}
BENCHMARK(BM_BuildHamiltonian)->Args({8, 32})->Args({16, 64});

// Sparse Schrödinger propagation of a driven coherent ⊗ coherent state over
// one mechanical period.
void BM_Propagate(benchmark::State& state) {
  const SystemParams p = driven();
  const int dim_field = static_cast<int>(state.range(0));
  const int dim_mech = static_cast<int>(state.range(1));
  const StateVector psi0 =
      tensor(coherent_state({2.0, 0.0}, dim_field), coherent_state({2.0, 0.0}, dim_mech));
  const auto t = grid(2.0 * kPi, 21);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(psi0, p, t));
  }
}
BENCHMARK(BM_Propagate)->Args({8, 32})->Args({16, 32})->Unit(benchmark::kMillisecond);

// Observable extraction from an already-evolved trajectory.
void BM_ObservablesFromState(benchmark::State& state) {
  const SystemParams p = driven();
  const StateVector psi0 =
      tensor(coherent_state({2.0, 0.0}, 8), coherent_state({2.0, 0.0}, 32));
  const auto t = grid(2.0 * kPi, 21);
  const StateTrajectory traj = propagate(psi0, p, t);
  const std::vector<ObservableLabel> which = {
      ObservableLabel::phonon_mean, ObservableLabel::photon_mean, ObservableLabel::dx,
      ObservableLabel::mandel_q};
  for (auto _ : state) {
    benchmark::DoNotOptimize(observables_from_state(traj, which));
  }
}
BENCHMARK(BM_ObservablesFromState);

}  // namespace
