#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hgb/gnn/autograd.hpp"
#include "hgb/gnn/layers.hpp"
#include "hgb/rng.hpp"

namespace hgb::gnn {

enum class Architecture { gcn, sage, gat, gatv2, hyperconv, hyperatten, lp };

Architecture parse_architecture(std::string_view name);
std::string_view to_string(Architecture arch);

struct ModelSpec {
  Architecture architecture = Architecture::gcn;
  /// Inner models of an LP architecture; ignored otherwise.
  Architecture inner1 = Architecture::gcn;
  Architecture inner2 = Architecture::hyperconv;
  std::size_t num_layers = 2;
  std::size_t hidden_dim = 32;
  double dropout = 0.5;
  std::size_t output_dim = 1;

  /// Throws ContractError on non-positive sizes, dropout outside [0, 1) or
  /// nested LP.
  void check() const;
  /// "gcn", "hyperatten", "lp:gcn+hyperconv", ...
  std::string name() const;
};

/// Parses a model name as accepted by name(); other fields keep defaults.
ModelSpec parse_model_spec(std::string_view name);

struct Forward {
  /// Pre-activation output; losses are taken on this.
  Var raw;
  /// raw, or log-softmax of raw for LP classification heads.
  Var output;
};

/// Layer stack (or LP pair of stacks plus linear head) with its parameters.
/// Layers are separated by ReLU; dropout precedes every layer.
class Model {
 public:
  Model() = default;
  /// Glorot-uniform weights drawn from `rng`, zero biases.
  Model(ModelSpec spec, std::size_t input_dim, bool classification, Rng& rng);

  /// Rebuilds a model from stored parameters (shapes are checked).
  static Model from_parameters(ModelSpec spec, std::size_t input_dim, bool classification,
                               std::vector<Matrix> parameters);

  const ModelSpec& spec() const { return spec_; }
  std::size_t input_dim() const { return input_dim_; }
  bool classification() const { return classification_; }

  std::vector<Matrix>& parameters() { return params_; }
  const std::vector<Matrix>& parameters() const { return params_; }
  const std::vector<std::string>& parameter_names() const { return names_; }

  /// Puts every parameter on the tape as a variable.
  std::vector<Var> bind(ad::Tape& tape) const;

  /// Forward pass with bound parameters. Dropout is applied only when
  /// `dropout_rng` is non-null.
  Forward forward(ad::Tape& tape, const GraphContext& ctx, const Matrix& x,
                  std::span<const Var> params, Rng* dropout_rng) const;

  /// Evaluation-mode output (no dropout).
  Matrix predict(const GraphContext& ctx, const Matrix& x) const;

 private:
  struct Layer {
    Architecture arch;
    std::size_t in = 0;
    std::size_t out = 0;
    std::size_t first_param = 0;
  };

  void build_layout();
  Var run_stack(const GraphContext& ctx, Var x, std::span<const Var> params,
                std::span<const Layer> layers, Rng* dropout_rng) const;

  ModelSpec spec_;
  std::size_t input_dim_ = 0;
  bool classification_ = true;
  std::vector<Layer> layers_;
  std::size_t stack_split_ = 0;
  std::size_t head_param_ = 0;
  std::vector<Matrix> params_;
  std::vector<std::string> names_;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> shapes_;
};

/// JSON encoding of a model: spec, input width, task kind and every
/// parameter matrix, tagged with the toolkit version.
std::string serialize_model(const Model& model);
Model parse_model(std::string_view json_text);

}  // namespace hgb::gnn
