#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "hgb/sample.hpp"

namespace {

void BM_Sampler(benchmark::State& state, hgb::SamplerKind kind, std::size_t budget) {
  const auto d = hgb::bench::community_graph(20000, 16.0);
  hgb::Rng rng(3);
  const hgb::SamplerSpec spec{kind, budget, 2};
  for (auto _ : state) {
    auto sub = hgb::draw(d.graph, spec, rng);
    benchmark::DoNotOptimize(sub);
  }
}
BENCHMARK_CAPTURE(BM_Sampler, node, hgb::SamplerKind::node, 3000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sampler, edge, hgb::SamplerKind::edge, 1500)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sampler, rw, hgb::SamplerKind::random_walk, 1000)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sampler, rand_hyperedge, hgb::SamplerKind::random_hyperedge, 500)
    ->Unit(benchmark::kMillisecond);

}  // namespace
