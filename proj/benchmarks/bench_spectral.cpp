#include <benchmark/benchmark.h>

#include "vll/ball.hpp"
#include "vll/fft.hpp"
#include "vll/mollifier.hpp"
#include "vll/spectral.hpp"

using namespace vll;

namespace {

ScalarField bench_field(const TorusGrid& g) {
  ScalarField w(g);
  for (int r = 0; r < g.n(); ++r)
    for (int c = 0; c < g.n(); ++c)
      w.at(r, c) = std::sin(3 * g.x1(c)) * std::cos(5 * g.x2(r)) +
                   0.3 * std::sin(g.x2(r));
  return w;
}

}  // namespace

static void BM_ForwardTransform(benchmark::State& state) {
  TorusGrid g(static_cast<int>(state.range(0)));
  ScalarField w = bench_field(g);
  SpectralField out(g);
  for (auto _ : state) {
    forward(w, out);
    benchmark::DoNotOptimize(out.coeffs.data());
  }
}
BENCHMARK(BM_ForwardTransform)->Arg(256)->Arg(512)->Arg(1024);

static void BM_BiotSavart(benchmark::State& state) {
  TorusGrid g(static_cast<int>(state.range(0)));
  ScalarField w = bench_field(g);
  w.subtract_mean();
  for (auto _ : state) {
    VectorField u = biot_savart(w);
    benchmark::DoNotOptimize(u.u1.data());
  }
}
BENCHMARK(BM_BiotSavart)->Arg(256)->Arg(512)->Arg(1024);

static void BM_BallConvolve(benchmark::State& state) {
  TorusGrid g(static_cast<int>(state.range(0)));
  ScalarField w = bench_field(g);
  ball_convolve(w, 0.2);  // warm the kernel cache
  for (auto _ : state) {
    ScalarField out = ball_convolve(w, 0.2);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_BallConvolve)->Arg(256)->Arg(512)->Arg(1024);

static void BM_Mollify(benchmark::State& state) {
  TorusGrid g(static_cast<int>(state.range(0)));
  ScalarField w = bench_field(g);
  mollify(w, 0.1);
  for (auto _ : state) {
    ScalarField out = mollify(w, 0.1);
    benchmark::DoNotOptimize(out.values.data());
  }
}
BENCHMARK(BM_Mollify)->Arg(256)->Arg(512);
