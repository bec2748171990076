#include <benchmark/benchmark.h>

#include "heatwell/functionals.hpp"
#include "heatwell/solver.hpp"
#include "heatwell/weighted_space.hpp"

using namespace heatwell;

namespace {

const Parameters kP33(3, 3.0);

void bm_quadrature(benchmark::State& state) {
  const GridPtr g = make_grid(16.0, static_cast<int>(state.range(0)), 3);
  const Field w = gaussian_field(g, 0.5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(l2k_norm_sq(w));
    benchmark::DoNotOptimize(grad_l2k_sq(w));
    benchmark::DoNotOptimize(lp1k_norm(w, kP33));
  }
  state.SetItemsProcessed(state.iterations() * g->node_count());
}
BENCHMARK(bm_quadrature)->Arg(1024)->Arg(4096);

void bm_report(benchmark::State& state) {
  const GridPtr g = make_grid(16.0, 4096, 3);
  const Field w = gaussian_field(g, 0.5, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(report(w, kP33));
  }
}
BENCHMARK(bm_report);

void bm_imex_step(benchmark::State& state) {
  const GridPtr g = make_grid(16.0, static_cast<int>(state.range(0)), 3);
  const Field w = gaussian_field(g, 0.5, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(w, 1e-3, kP33));
  }
  state.SetItemsProcessed(state.iterations() * g->node_count());
}
BENCHMARK(bm_imex_step)->Arg(1024)->Arg(4096);

void bm_evolve_short(benchmark::State& state) {
  const GridPtr g = make_grid(12.0, 512, 3);
  const Field u0 = gaussian_field(g, 0.5, 0.5);
  SolverConfig cfg;
  cfg.s_max = 0.5;
  cfg.record_every = 50;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve(u0, kP33, cfg));
  }
}
BENCHMARK(bm_evolve_short);

void bm_well_depth(benchmark::State& state) {
  const GridPtr g = make_grid(16.0, 2048, 3);
  const GaussianFamilySpec fam{0.15, 3.0, 20};
  for (auto _ : state) {
    benchmark::DoNotOptimize(well_depth_upper(fam, kP33, g));
  }
}
BENCHMARK(bm_well_depth);

}  // namespace

BENCHMARK_MAIN();
