#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "optomech/heisenberg.hpp"
#include "optomech/observables.hpp"
#include "optomech/propagators.hpp"
#include "optomech/warnings.hpp"

using namespace optomech;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<double> grid(double t_end, int count) {
  std::vector<double> t(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) t[static_cast<size_t>(i)] = t_end * i / (count - 1);
  return t;
}

SystemParams combined() {
  SystemParams p;
  p.omega_c = 10.0;
  p.omega_m = 1.0;
  p.g0 = 0.1;
  p.g1 = 0.01;
  return p;
}

void BM_QuadraticCoefficients(benchmark::State& state) {
  SystemParams p = combined();
  p.g0 = 0.0;
  const auto t = grid(8.0 * kPi, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quadratic_coefficients(p, 4, t));
  }
}
BENCHMARK(BM_QuadraticCoefficients)->Arg(201)->Arg(1601);

void BM_LinquadCoefficients(benchmark::State& state) {
  const SystemParams p = combined();
  const auto t = grid(8.0 * kPi, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(linquad_coefficients(p, 4, t));
  }
}
BENCHMARK(BM_LinquadCoefficients)->Arg(201)->Arg(1601);

// Full coherent-field pipeline: per-sector trajectories plus the
// Poisson-weighted phonon mean on every node.
void BM_SectorTablePhononSeries(benchmark::State& state) {
  const SystemParams p = combined();
  const Complex alpha{2.0, 0.0};
  const Complex Gamma{2.0, 0.0};
  const auto t = grid(8.0 * kPi, 201);
  for (auto _ : state) {
    const SectorTable table(p, alpha, t);
    double acc = 0.0;
    for (size_t i = 0; i < t.size(); ++i) acc += table.phonon_mean_at(Gamma, i);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_SectorTablePhononSeries);

// Observable evaluation alone, on a precomputed trajectory.
void BM_PhononMeanFromCoeffs(benchmark::State& state) {
  const SystemParams p = combined();
  const auto t = grid(8.0 * kPi, 1601);
  const CoefficientTrajectory traj = linquad_coefficients(p, 4, t);
  const Complex Gamma{2.0, 0.0};
  for (auto _ : state) {
    double acc = 0.0;
    for (size_t i = 0; i < t.size(); ++i) acc += phonon_mean(heisenberg_coeffs(traj, i), Gamma);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_PhononMeanFromCoeffs);

}  // namespace

// Custom main: some cases deliberately use small truncated dims, so drop the
// library's tail warnings to keep the benchmark table readable.
int main(int argc, char** argv) {
  set_warning_sink([](const std::string&) {});
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
