#include <benchmark/benchmark.h>

#include "vll/diagnostics.hpp"
#include "vll/lab.hpp"

using namespace vll;

namespace {

Trajectory short_run(int n) {
  TorusGrid g(n);
  ScalarField w0 = random_smooth_vorticity(g, 3, -3.0);
  return evolve(w0, 2e-2, ForceSpec::none(), 0.05, 1e-3, 10);
}

}  // namespace

static void BM_StructureFunction(benchmark::State& state) {
  Trajectory traj = short_run(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double v = structure_function_s2(traj, 0.2);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_StructureFunction)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_QCon(benchmark::State& state) {
  Trajectory traj = short_run(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double v = q_con(traj, 0.2);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_QCon)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_OmegaCon(benchmark::State& state) {
  Trajectory traj = short_run(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    double v = omega_con(traj, 0.2);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_OmegaCon)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);
