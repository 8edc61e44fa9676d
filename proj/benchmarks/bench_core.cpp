#include <benchmark/benchmark.h>

#include "llg/dynamics.hpp"
#include "llg/experiments.hpp"
#include "llg/grid_field.hpp"
#include "llg/integrator.hpp"

using namespace llg;

static void BM_rhs(benchmark::State& state) {
  const GridSpec grid(static_cast<int>(state.range(0)), 1.0);
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  const Field m = perturbed_initial(grid, r, 0.1);
  const Field u = control_proportional(m, r, 0.25);
  for (auto _ : state) {
    Field out = llg_rhs(m, u, 0.02);
    benchmark::DoNotOptimize(out.values.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.nodes());
}
BENCHMARK(BM_rhs)->Arg(64)->Arg(256)->Arg(1024);

static void BM_rk4_step(benchmark::State& state) {
  const GridSpec grid(static_cast<int>(state.range(0)), 1.0);
  const SimParams params(0.02, 0.25, 0.25, grid);
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  IntegratorConfig cfg;
  cfg.dt = resolve_dt(cfg, grid.dx(), params.nu());
  SimState s{0.0, perturbed_initial(grid, r, 0.1)};
  for (auto _ : state) {
    s = step(s, params, r, std::nullopt, cfg);
    benchmark::DoNotOptimize(s.m.values.data());
  }
  state.SetItemsProcessed(state.iterations() * grid.nodes());
}
BENCHMARK(BM_rk4_step)->Arg(64)->Arg(256)->Arg(1024);

static void BM_short_stabilization(benchmark::State& state) {
  const GridSpec grid(64, 1.0);
  const SimParams params(0.02, 0.25, 0.25, grid);
  const EquilibriumPoint r(Vec3{1.0, 0.0, 0.0});
  const Field m0 = perturbed_initial(grid, r, 0.1);
  for (auto _ : state) {
    const auto rep = run_stabilization(params, r, m0, 0.5, 1e-3);
    benchmark::DoNotOptimize(rep.samples.size());
  }
}
BENCHMARK(BM_short_stabilization)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
