#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "hgb/construct.hpp"

namespace {

void BM_MaximalCliques(benchmark::State& state) {
  const auto d = hgb::bench::community_graph(static_cast<std::size_t>(state.range(0)), 30.0);
  for (auto _ : state) {
    auto cliques = hgb::cliques_to_hyperedges(d.graph.simple_edges, d.graph.num_nodes, 3);
    benchmark::DoNotOptimize(cliques);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.graph.simple_edges.size()));
}
BENCHMARK(BM_MaximalCliques)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

void BM_BallHyperedges(benchmark::State& state) {
  const auto d = hgb::bench::community_graph(static_cast<std::size_t>(state.range(0)), 4.0);
  for (auto _ : state) {
    auto h = hgb::ball_hyperedges(d.graph.node_features, 0.5);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_BallHyperedges)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
