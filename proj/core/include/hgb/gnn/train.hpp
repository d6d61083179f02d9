#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hgb/gnn/model.hpp"
#include "hgb/io.hpp"
#include "hgb/sample.hpp"

namespace hgb::gnn {

/// Subgraph-batched training: every epoch draws `batch` subgraphs from the
/// full graph and takes one optimiser step on each.
struct SaintConfig {
  SamplerSpec sampler;
  std::size_t batch = 5;
};

struct TrainConfig {
  double learning_rate = 0.01;
  std::size_t epochs = 50;
  std::size_t seeds = 5;
  /// Seed of run i is mix_seed(seed, i).
  std::uint64_t seed = 0;
  std::optional<SaintConfig> saint;

  void check() const;
};

enum class MetricKind { accuracy, mse };

std::string_view to_string(MetricKind kind);

struct SeedRun {
  std::uint64_t seed = 0;
  bool completed = false;
  /// Test metric; meaningful only when completed.
  double value = 0.0;
  /// Mean training loss of every epoch that finished.
  std::vector<double> loss_curve;
  std::string diagnostic;
};

struct TrainReport {
  MetricKind metric = MetricKind::accuracy;
  /// Test metric of every completed run, in seed order.
  std::vector<double> values;
  double mean = 0.0;
  /// Population standard deviation of values.
  double std = 0.0;
  std::vector<SeedRun> runs;
};

/// Learning rate of epoch t (0-based): lr (1 + cos(pi t / epochs)) / 2.
double cosine_lr(double lr, std::size_t epoch, std::size_t epochs);

/// Adam with bias correction.
class Adam {
 public:
  Adam(const std::vector<Matrix>& params, double beta1 = 0.9, double beta2 = 0.999,
       double eps = 1e-8);
  void step(std::vector<Matrix>& params, const std::vector<Matrix>& grads, double lr);

 private:
  double beta1_, beta2_, eps_;
  std::size_t t_ = 0;
  std::vector<Matrix> m_, v_;
};

/// Targets as the loss sees them: one-hot rows for classification, a single
/// column for regression.
Matrix target_matrix(const HybridGraph& g);

struct TrainedModel {
  Model model;
  SeedRun run;
};

/// One training run. A non-finite loss stops it early with a diagnostic
/// (run.completed stays false). `model_spec.output_dim` is overridden by the
/// task: class count, or 1 for regression.
TrainedModel train_once(const HybridGraph& g, const SplitMasks& masks, ModelSpec model_spec,
                        const TrainConfig& config, std::uint64_t run_seed);

/// `config.seeds` independent runs, each scored on masks.test. Throws
/// TrainingError when no run completes.
TrainReport train(const HybridGraph& g, const SplitMasks& masks, const ModelSpec& model_spec,
                  const TrainConfig& config);

/// Accuracy (argmax) or MSE of the model on the nodes in `mask`.
double evaluate(const Model& model, const HybridGraph& g, std::span<const NodeId> mask);
double evaluate(const Model& model, const GraphContext& ctx, const HybridGraph& g,
                std::span<const NodeId> mask);

/// Expected accuracy of uniform guessing.
double random_guess(std::size_t num_classes);

double mean_of(std::span<const double> values);
double population_std(std::span<const double> values);

}  // namespace hgb::gnn
