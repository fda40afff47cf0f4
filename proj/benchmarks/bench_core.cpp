#include <benchmark/benchmark.h>

#include <map>

#include "lrp/bfs.hpp"
#include "lrp/diameter.hpp"
#include "lrp/sampler.hpp"
#include "lrp/structure.hpp"

using namespace lrp;

namespace {

const GridGraph& cached_graph(std::int64_t n) {
  static std::map<std::int64_t, GridGraph> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, sample_graph(ModelParams(1, n, 1.0, 1.0, 42), 0)).first;
  }
  return it->second;
}

void BM_SampleGraph(benchmark::State& state) {
  const ModelParams params(1, state.range(0), 1.0, 1.0, 42);
  const OffsetTable table(params);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_graph(table, trial++).long_edge_count());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleGraph)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_Bfs(benchmark::State& state) {
  const GridGraph& g = cached_graph(state.range(0));
  BfsWorkspace ws;
  NodeId src = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ws.run(g, src).eccentricity);
    src = (src + 97) % g.node_count();
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Bfs)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

void BM_EstimateDiameter(benchmark::State& state) {
  const GridGraph& g = cached_graph(1 << 14);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_diameter(g, 16).value);
  }
}
BENCHMARK(BM_EstimateDiameter);

void BM_ExactDiameterPruned(benchmark::State& state) {
  const GridGraph& g = cached_graph(1 << 12);
  DiameterOptions opts;
  opts.force_pruned = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_diameter(g, opts).value);
  }
}
BENCHMARK(BM_ExactDiameterPruned);

void BM_CutSweep(benchmark::State& state) {
  const GridGraph& g = cached_graph(1 << 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cut_nodes(g).count);
  }
}
BENCHMARK(BM_CutSweep);

void BM_Histogram(benchmark::State& state) {
  const GridGraph& g = cached_graph(1 << 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(edge_length_histogram(g).long_edge_total());
  }
}
BENCHMARK(BM_Histogram);

}  // namespace

BENCHMARK_MAIN();
