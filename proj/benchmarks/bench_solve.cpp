#include <benchmark/benchmark.h>

#include "speq/equivalence.hpp"
#include "speq/solver.hpp"

namespace {

void BM_SolveSkewed(benchmark::State& state) {
  auto econ = speq::builtin_economy("skew-b");
  speq::SolverConfig cfg;
  cfg.m_max = state.range(0);
  for (auto _ : state) {
    auto report = speq::solve(econ, cfg);
    benchmark::DoNotOptimize(report.residual);
  }
}
BENCHMARK(BM_SolveSkewed)->Arg(1 << 10)->Arg(1 << 14)->Arg(1 << 18);

void BM_InducedMapEvaluation(benchmark::State& state) {
  auto lab = speq::random_proper_labeling(speq::subdivide(2, 4), 999);
  auto demand = speq::induced_excess_demand(speq::build_map(lab));
  auto cells = speq::grid_cells(lab.sub);
  std::size_t i = 0;
  for (auto _ : state) {
    auto p = speq::cell_barycenter(cells[i % cells.size()], lab.sub);
    benchmark::DoNotOptimize(demand.evaluate(p));
    ++i;
  }
}
BENCHMARK(BM_InducedMapEvaluation);

void BM_SpernerViaEquilibrium(benchmark::State& state) {
  auto lab = speq::random_proper_labeling(speq::subdivide(2, state.range(0)), 31);
  speq::SolverConfig cfg;
  for (auto _ : state) {
    auto cert = speq::sperner_via_equilibrium(lab, cfg);
    benchmark::DoNotOptimize(cert.final_m);
  }
}
BENCHMARK(BM_SpernerViaEquilibrium)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
