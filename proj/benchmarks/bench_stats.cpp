#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "hgb/stats.hpp"

namespace {

void BM_ComputeStats(benchmark::State& state) {
  const auto d = hgb::bench::community_graph(static_cast<std::size_t>(state.range(0)), 30.0);
  for (auto _ : state) benchmark::DoNotOptimize(hgb::compute_stats(d.graph));
}
BENCHMARK(BM_ComputeStats)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace
