#include <benchmark/benchmark.h>

#include "vll/lab.hpp"
#include "vll/solver.hpp"
#include "vll/spectral.hpp"

using namespace vll;

// Cost of one full integration per resolution: dominated by the 15-16
// transforms each RK3 step performs.
static void BM_EvolveSteps(benchmark::State& state) {
  TorusGrid g(static_cast<int>(state.range(0)));
  ScalarField w0 = random_smooth_vorticity(g, 11, -3.0);
  const double dt = 1e-3;
  const int steps = 10;
  for (auto _ : state) {
    Trajectory traj = evolve(w0, 1e-3, ForceSpec::none(), steps * dt, dt, steps + 1);
    benchmark::DoNotOptimize(traj.ledger.energy.data());
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_EvolveSteps)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SteadyResidual(benchmark::State& state) {
  TorusGrid g(static_cast<int>(state.range(0)));
  ScalarField w0 = random_smooth_vorticity(g, 5, -3.0);
  VectorField u = biot_savart(w0);
  VectorField f(g);
  for (auto _ : state) {
    double r = steady_residual(u, f, 1e-2);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SteadyResidual)->Arg(256)->Arg(512);
