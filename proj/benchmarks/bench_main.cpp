#include <benchmark/benchmark.h>

#include "mlwng/generators.hpp"
#include "mlwng/graph.hpp"
#include "mlwng/naming_game.hpp"

namespace {

using namespace mlwng;

void BM_GameStepsComplete(benchmark::State& state) {
  const Graph g = Graph::complete(static_cast<std::size_t>(state.range(0)));
  NamingGame game(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(game.step());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GameStepsComplete)->Arg(100)->Arg(1000);

void BM_GameStepsMlw(benchmark::State& state) {
  const Graph g = gen_mlw(MlwParams::from_rho(1000, 0.5, 10), 1);
  NamingGame game(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(game.step());
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_GameStepsMlw);

void BM_GenerateMlw(benchmark::State& state) {
  const MlwParams p = MlwParams::from_rho(1000, 0.5, static_cast<std::size_t>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(gen_mlw(p, ++seed));
}
BENCHMARK(BM_GenerateMlw)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_ComputeStats(benchmark::State& state) {
  const Graph g = gen_mlw(MlwParams::from_rho(1000, 0.5, 10), 1);
  for (auto _ : state) benchmark::DoNotOptimize(compute_stats(g));
}
BENCHMARK(BM_ComputeStats)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
