// Serial reference vs OpenMP kernels: ratio sweep and Wigner grid.

#include <benchmark/benchmark.h>

#include "squeezesim/analysis.hpp"
#include "squeezesim/optimize.hpp"

using namespace squeezesim;

namespace {

SystemParams fig4_params() {
  SystemParams p;
  p.kappa = 0.1;
  p.gamma_m = 1e-6;
  p.n_m = 10.0;
  return p;
}

void BM_SweepRatio(benchmark::State& state, Execution exec) {
  const auto p = fig4_params();
  const auto grid = linspace(0.0, 0.99, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_ratio(p, 0.1, p.n_m, grid, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SweepG0(benchmark::State& state, Execution exec) {
  const auto p = fig4_params();
  const auto grid = linspace(0.02, 0.3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sweep_g0(p, p.n_m, grid, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_WignerGrid(benchmark::State& state, Execution exec) {
  Mat2 vb;
  vb << 0.1668, 0.01, 0.01, 1.6;
  const auto w = sigma_window(1.6, 6.0);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(wigner_grid(vb, w, w, n, exec));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_SweepRatio, serial, Execution::Serial)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_SweepRatio, openmp, Execution::OpenMP)->Arg(64)->Arg(256);
BENCHMARK_CAPTURE(BM_SweepG0, serial, Execution::Serial)->Arg(16);
BENCHMARK_CAPTURE(BM_SweepG0, openmp, Execution::OpenMP)->Arg(16);
BENCHMARK_CAPTURE(BM_WignerGrid, serial, Execution::Serial)->Arg(201)->Arg(801);
BENCHMARK_CAPTURE(BM_WignerGrid, openmp, Execution::OpenMP)->Arg(201)->Arg(801);

BENCHMARK_MAIN();
