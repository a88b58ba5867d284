// Parallel kernels against their serial references. Run with
// OMP_NUM_THREADS set to compare thread counts.

#include <benchmark/benchmark.h>

#include <random>

#include "cliquepool/cliques.hpp"
#include "cliquepool/coarsen.hpp"
#include "cliquepool/generators.hpp"
#include "cliquepool/serial.hpp"

namespace cp = cliquepool;

namespace {

cp::Graph bench_graph(std::int64_t n) {
  std::mt19937_64 rng(1);
  return cp::gen::random_connected(static_cast<std::size_t>(n), 8.0 / static_cast<double>(n), rng);
}

void BM_Cliques(benchmark::State& state) {
  const cp::Graph g = bench_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cp::maximal_cliques(g));
}

void BM_CliquesSerial(benchmark::State& state) {
  const cp::Graph g = bench_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cp::serial::maximal_cliques(g));
}

void BM_Coarsen(benchmark::State& state) {
  const cp::Graph g = bench_graph(state.range(0));
  const cp::Assignment a = cp::assign_pools(g, cp::maximal_cliques(g));
  for (auto _ : state) benchmark::DoNotOptimize(cp::coarsen_graph(g, a));
}

void BM_CoarsenSerial(benchmark::State& state) {
  const cp::Graph g = bench_graph(state.range(0));
  const cp::Assignment a = cp::assign_pools(g, cp::maximal_cliques(g));
  for (auto _ : state) benchmark::DoNotOptimize(cp::serial::coarsen_graph(g, a));
}

void BM_PoolFeatures(benchmark::State& state) {
  const cp::Graph g = bench_graph(state.range(0));
  const cp::Assignment a = cp::assign_pools(g, cp::maximal_cliques(g));
  std::mt19937_64 rng(2);
  const cp::Matrix x = cp::gen::random_matrix(g.node_count(), 64, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cp::pool_features(x, a, cp::Readout::kMean));
}

void BM_PoolFeaturesSerial(benchmark::State& state) {
  const cp::Graph g = bench_graph(state.range(0));
  const cp::Assignment a = cp::assign_pools(g, cp::maximal_cliques(g));
  std::mt19937_64 rng(2);
  const cp::Matrix x = cp::gen::random_matrix(g.node_count(), 64, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cp::serial::pool_features(x, a, cp::Readout::kMean));
}

void BM_AllPairs(benchmark::State& state) {
  const cp::Graph g = bench_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cp::all_pairs_distances(g));
}

void BM_AllPairsSerial(benchmark::State& state) {
  const cp::Graph g = bench_graph(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cp::serial::all_pairs_distances(g));
}

void BM_Matmul(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const cp::Matrix a = cp::gen::random_matrix(n, n, rng);
  const cp::Matrix b = cp::gen::random_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cp::matmul(a, b));
}

void BM_MatmulSerial(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto n = static_cast<std::size_t>(state.range(0));
  const cp::Matrix a = cp::gen::random_matrix(n, n, rng);
  const cp::Matrix b = cp::gen::random_matrix(n, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(cp::serial::matmul(a, b));
}

}  // namespace

BENCHMARK(BM_Cliques)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CliquesSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Coarsen)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CoarsenSerial)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PoolFeatures)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PoolFeaturesSerial)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllPairs)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AllPairsSerial)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Matmul)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MatmulSerial)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
