#include "hgb/gnn/train.hpp"

#include <cmath>
#include <numbers>

#include "hgb/error.hpp"

namespace hgb::gnn {

void TrainConfig::check() const {
  if (epochs < 1) throw ContractError("train: epochs must be at least 1");
  if (seeds < 1) throw ContractError("train: seeds must be at least 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
    throw ContractError("train: learning rate must be positive");
  if (saint && saint->batch < 1) throw ContractError("train: batch must be at least 1");
}

std::string_view to_string(MetricKind kind) {
  return kind == MetricKind::accuracy ? "accuracy" : "mse";
}

double cosine_lr(double lr, std::size_t epoch, std::size_t epochs) {
  const double ratio = static_cast<double>(epoch) / static_cast<double>(epochs);
  return lr * (1.0 + std::cos(std::numbers::pi * ratio)) / 2.0;
}

Adam::Adam(const std::vector<Matrix>& params, double beta1, double beta2, double eps)
    : beta1_(beta1), beta2_(beta2), eps_(eps) {
  for (const Matrix& p : params) {
    m_.push_back(Matrix::Zero(p.rows(), p.cols()));
    v_.push_back(Matrix::Zero(p.rows(), p.cols()));
  }
}

void Adam::step(std::vector<Matrix>& params, const std::vector<Matrix>& grads, double lr) {
  if (params.size() != m_.size() || grads.size() != m_.size())
    throw ContractError("Adam: parameter count changed");
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grads[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grads[i].cwiseProduct(grads[i]);
    params[i].array() -=
        lr * (m_[i].array() / c1) / ((v_[i].array() / c2).sqrt() + eps_);
  }
}

Matrix target_matrix(const HybridGraph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes);
  if (const auto* labels = std::get_if<ClassLabels>(&g.labels)) {
    Matrix t = Matrix::Zero(n, static_cast<Eigen::Index>(g.num_classes()));
    for (Eigen::Index v = 0; v < n; ++v) t(v, (*labels)[static_cast<std::size_t>(v)]) = 1.0;
    return t;
  }
  const auto& values = std::get<RealLabels>(g.labels);
  Matrix t(n, 1);
  for (Eigen::Index v = 0; v < n; ++v) t(v, 0) = values[static_cast<std::size_t>(v)];
  return t;
}

namespace {

Matrix gather(const Matrix& m, std::span<const Eigen::Index> rows) {
  Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
  return out;
}

/// One optimiser step; returns the loss before the step.
double step(Model& model, Adam& adam, const GraphContext& ctx, const Matrix& x,
            const Matrix& targets, std::shared_ptr<const ad::Index> rows, double lr,
            Rng& dropout_rng) {
  ad::Tape tape;
  const std::vector<Var> vars = model.bind(tape);
  const Forward fwd = model.forward(tape, ctx, x, vars, &dropout_rng);
  const Var picked = ad::gather_rows(fwd.raw, rows);
  const Matrix picked_targets = gather(targets, *rows);
  const Var loss = model.classification() ? ad::bce_with_logits(picked, picked_targets)
                                          : ad::mse(picked, picked_targets);
  const double value = loss.value()(0, 0);
  if (!std::isfinite(value)) return value;
  tape.backward(loss);
  std::vector<Matrix> grads;
  grads.reserve(vars.size());
  for (const Var& v : vars) {
    grads.push_back(v.grad());
    if (!grads.back().allFinite()) return std::numeric_limits<double>::quiet_NaN();
  }
  adam.step(model.parameters(), grads, lr);
  return value;
}

}  // namespace

TrainedModel train_once(const HybridGraph& g, const SplitMasks& masks, ModelSpec model_spec,
                        const TrainConfig& config, std::uint64_t run_seed) {
  config.check();
  require_valid(g, "train");
  if (masks.train.empty()) throw ContractError("train: empty training mask");
  for (const auto* mask : {&masks.train, &masks.val, &masks.test})
    for (NodeId v : *mask)
      if (v >= g.num_nodes) throw ContractError("train: mask node out of range");
  const bool classification = g.is_classification();
  model_spec.output_dim = classification ? g.num_classes() : 1;

  Rng init_rng(run_seed);
  Rng dropout_rng(mix_seed(run_seed, 1));
  Rng sampler_rng(mix_seed(run_seed, 2));

  TrainedModel result{Model(model_spec, g.feature_dim(), classification, init_rng), {}};
  result.run.seed = run_seed;
  Model& model = result.model;
  Adam adam(model.parameters());
  const Matrix targets = target_matrix(g);
  const GraphContext full = GraphContext::build(g);
  auto train_rows = std::make_shared<ad::Index>(masks.train.begin(), masks.train.end());
  std::vector<bool> in_train(g.num_nodes, false);
  for (NodeId v : masks.train) in_train[v] = true;

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const double lr = cosine_lr(config.learning_rate, epoch, config.epochs);
    double loss = 0.0;
    if (!config.saint) {
      loss = step(model, adam, full, g.node_features, targets, train_rows, lr, dropout_rng);
    } else {
      std::size_t steps = 0;
      for (std::size_t b = 0; b < config.saint->batch; ++b) {
        const SampledSubgraph sub = draw(g, config.saint->sampler, sampler_rng);
        auto rows = std::make_shared<ad::Index>();
        for (std::size_t i = 0; i < sub.node_ids.size(); ++i)
          if (in_train[sub.node_ids[i]]) rows->push_back(static_cast<Eigen::Index>(i));
        if (rows->empty()) continue;
        const GraphContext ctx = GraphContext::build(sub.graph);
        const Matrix sub_targets = gather(
            targets, ad::Index(sub.node_ids.begin(), sub.node_ids.end()));
        const double l =
            step(model, adam, ctx, sub.graph.node_features, sub_targets, rows, lr, dropout_rng);
        loss += l;
        ++steps;
        if (!std::isfinite(l)) break;
      }
      if (steps > 0) loss /= static_cast<double>(steps);
    }
    if (!std::isfinite(loss)) {
      result.run.diagnostic =
          "non-finite loss or gradient at epoch " + std::to_string(epoch + 1) + "; run aborted";
      return result;
    }
    result.run.loss_curve.push_back(loss);
  }
  result.run.value = evaluate(model, full, g, masks.test);
  result.run.completed = true;
  return result;
}

TrainReport train(const HybridGraph& g, const SplitMasks& masks, const ModelSpec& model_spec,
                  const TrainConfig& config) {
  config.check();
  TrainReport report;
  report.metric = g.is_classification() ? MetricKind::accuracy : MetricKind::mse;
  for (std::size_t i = 0; i < config.seeds; ++i) {
    TrainedModel trained = train_once(g, masks, model_spec, config, mix_seed(config.seed, i));
    if (trained.run.completed) report.values.push_back(trained.run.value);
    report.runs.push_back(std::move(trained.run));
  }
  if (report.values.empty())
    throw TrainingError("train: no run completed (" + report.runs.front().diagnostic + ")");
  report.mean = mean_of(report.values);
  report.std = population_std(report.values);
  return report;
}

double evaluate(const Model& model, const HybridGraph& g, std::span<const NodeId> mask) {
  return evaluate(model, GraphContext::build(g), g, mask);
}

double evaluate(const Model& model, const GraphContext& ctx, const HybridGraph& g,
                std::span<const NodeId> mask) {
  if (mask.empty()) throw ContractError("evaluate: empty mask");
  if (model.classification() != g.is_classification())
    throw ContractError("evaluate: model and dataset disagree on the task");
  const Matrix out = model.predict(ctx, g.node_features);
  if (const auto* labels = std::get_if<ClassLabels>(&g.labels)) {
    std::size_t correct = 0;
    for (NodeId v : mask) {
      Eigen::Index best = 0;
      out.row(v).maxCoeff(&best);
      if (best == (*labels)[v]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(mask.size());
  }
  const auto& values = std::get<RealLabels>(g.labels);
  double sum = 0.0;
  for (NodeId v : mask) {
    const double d = out(v, 0) - values[v];
    sum += d * d;
  }
  return sum / static_cast<double>(mask.size());
}

double random_guess(std::size_t num_classes) {
  if (num_classes < 1) throw ContractError("random_guess: need at least one class");
  return 1.0 / static_cast<double>(num_classes);
}

double mean_of(std::span<const double> values) {
  if (values.empty()) throw ContractError("mean_of: no values");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double population_std(std::span<const double> values) {
  const double m = mean_of(values);
  double sum = 0.0;
  for (double v : values) sum += (v - m) * (v - m);
  return std::sqrt(sum / static_cast<double>(values.size()));
}

}  // namespace hgb::gnn
