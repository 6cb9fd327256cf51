#include <benchmark/benchmark.h>

#include "speq/sperner_search.hpp"

namespace {

speq::Labeling make_labeling(int n, std::int64_t m) {
  return speq::random_proper_labeling(speq::subdivide(n, m), 12345);
}

void BM_EnumerateFullyLabeled(benchmark::State& state) {
  auto lab = make_labeling(2, state.range(0));
  for (auto _ : state) {
    auto result = speq::enumerate_fully_labeled(lab);
    benchmark::DoNotOptimize(result.cells.size());
  }
}
BENCHMARK(BM_EnumerateFullyLabeled)->Arg(16)->Arg(32)->Arg(64);

void BM_PathFollow(benchmark::State& state) {
  auto lab = make_labeling(2, state.range(0));
  for (auto _ : state) {
    auto result = speq::path_follow(lab);
    benchmark::DoNotOptimize(result.visited);
  }
}
BENCHMARK(BM_PathFollow)->Arg(16)->Arg(32)->Arg(64);

void BM_LocateCell(benchmark::State& state) {
  auto sub = speq::subdivide(3, 8);
  auto cells = speq::grid_cells(sub);
  std::size_t i = 0;
  for (auto _ : state) {
    auto p = speq::cell_barycenter(cells[i % cells.size()], sub);
    benchmark::DoNotOptimize(speq::locate_cell(sub, p));
    ++i;
  }
}
BENCHMARK(BM_LocateCell);

}  // namespace

BENCHMARK_MAIN();
