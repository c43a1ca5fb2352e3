#include <benchmark/benchmark.h>

#include "perstopy/gromov_hausdorff.hpp"
#include "perstopy/persistent_pi1.hpp"

using namespace perstopy;

namespace {

Execution mode(const benchmark::State& s) { return s.range(0) ? Execution::Parallel : Execution::Serial; }

void BM_GHSearch(benchmark::State& state) {
  auto x = cycle_graph(7);
  auto y = star_graph(7).space;
  for (auto _ : state) benchmark::DoNotOptimize(gh_search(x.matrix(), y.matrix(), kDefaultGHBudget, std::nullopt, mode(state)));
}

void BM_GHSearchRandom(benchmark::State& state) {
  auto x = random_metric(7, 11);
  auto y = random_metric(7, 12);
  for (auto _ : state) benchmark::DoNotOptimize(gh_search(x.matrix(), y.matrix(), kDefaultGHBudget, std::nullopt, mode(state)));
}

void BM_PersistentPi1Torus(benchmark::State& state) {
  PointedMetricSpace x(linf_product(cycle_graph(6), cycle_graph(6)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(persistent_pi1(x, kDefaultTietzeEffort, mode(state)));
}

void BM_PersistentPi1Random(benchmark::State& state) {
  PointedMetricSpace x(random_metric(12, 3), 0);
  for (auto _ : state) benchmark::DoNotOptimize(persistent_pi1(x, kDefaultTietzeEffort, mode(state)));
}

}  // namespace

// Argument 0 is the serial reference, 1 the OpenMP kernel.
BENCHMARK(BM_GHSearch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GHSearchRandom)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PersistentPi1Torus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PersistentPi1Random)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
