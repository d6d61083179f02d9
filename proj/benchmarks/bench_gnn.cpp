#include <benchmark/benchmark.h>

#include "bench_util.hpp"
#include "hgb/gnn/model.hpp"
#include "hgb/gnn/train.hpp"

namespace {

void BM_Predict(benchmark::State& state, const char* name) {
  const auto d = hgb::bench::community_graph(5000, 16.0);
  const auto ctx = hgb::gnn::GraphContext::build(d.graph);
  auto spec = hgb::gnn::parse_model_spec(name);
  spec.output_dim = 4;
  hgb::Rng rng(0);
  const hgb::gnn::Model model(spec, 16, true, rng);
  for (auto _ : state) benchmark::DoNotOptimize(model.predict(ctx, d.graph.node_features));
}
BENCHMARK_CAPTURE(BM_Predict, gcn, "gcn")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Predict, gat, "gat")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Predict, hyperconv, "hyperconv")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Predict, hyperatten, "hyperatten")->Unit(benchmark::kMillisecond);

void BM_TrainEpochs(benchmark::State& state) {
  const auto d = hgb::bench::community_graph(2000, 8.0);
  const auto masks = hgb::split(d.graph, 0);
  hgb::gnn::TrainConfig config;
  config.seeds = 1;
  config.epochs = 10;
  for (auto _ : state)
    benchmark::DoNotOptimize(hgb::gnn::train(d.graph, masks, hgb::gnn::parse_model_spec("gcn"), config));
}
BENCHMARK(BM_TrainEpochs)->Unit(benchmark::kMillisecond);

}  // namespace
