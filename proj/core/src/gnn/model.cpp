#include "hgb/gnn/model.hpp"

#include <cmath>

#include <json.hpp>

#include "hgb/error.hpp"
#include "hgb/version.hpp"

namespace hgb::gnn {

Architecture parse_architecture(std::string_view name) {
  if (name == "gcn") return Architecture::gcn;
  if (name == "sage") return Architecture::sage;
  if (name == "gat") return Architecture::gat;
  if (name == "gatv2") return Architecture::gatv2;
  if (name == "hyperconv") return Architecture::hyperconv;
  if (name == "hyperatten") return Architecture::hyperatten;
  if (name == "lp") return Architecture::lp;
  throw ContractError("unknown architecture '" + std::string(name) + "'");
}

std::string_view to_string(Architecture arch) {
  switch (arch) {
    case Architecture::gcn: return "gcn";
    case Architecture::sage: return "sage";
    case Architecture::gat: return "gat";
    case Architecture::gatv2: return "gatv2";
    case Architecture::hyperconv: return "hyperconv";
    case Architecture::hyperatten: return "hyperatten";
    case Architecture::lp: return "lp";
  }
  return "unknown";
}

void ModelSpec::check() const {
  if (num_layers < 1) throw ContractError("model: num_layers must be positive");
  if (hidden_dim < 1) throw ContractError("model: hidden_dim must be positive");
  if (output_dim < 1) throw ContractError("model: output_dim must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ContractError("model: dropout must lie in [0, 1)");
  if (architecture == Architecture::lp &&
      (inner1 == Architecture::lp || inner2 == Architecture::lp))
    throw ContractError("model: LP inner models cannot be LP");
}

std::string ModelSpec::name() const {
  if (architecture != Architecture::lp) return std::string(to_string(architecture));
  return "lp:" + std::string(to_string(inner1)) + "+" + std::string(to_string(inner2));
}

ModelSpec parse_model_spec(std::string_view name) {
  ModelSpec spec;
  if (name.starts_with("lp:")) {
    const std::string_view rest = name.substr(3);
    const auto plus = rest.find('+');
    if (plus == std::string_view::npos)
      throw ContractError("model '" + std::string(name) + "': expected lp:<m1>+<m2>");
    spec.architecture = Architecture::lp;
    spec.inner1 = parse_architecture(rest.substr(0, plus));
    spec.inner2 = parse_architecture(rest.substr(plus + 1));
    if (spec.inner1 == Architecture::lp || spec.inner2 == Architecture::lp)
      throw ContractError("model '" + std::string(name) + "': LP inner models cannot be LP");
    return spec;
  }
  spec.architecture = parse_architecture(name);
  if (spec.architecture == Architecture::lp)
    throw ContractError("model 'lp' needs inner models, e.g. lp:gcn+hyperconv");
  return spec;
}

// ---------------------------------------------------------------------------

void Model::build_layout() {
  spec_.check();
  if (input_dim_ < 1) throw ContractError("model: input width must be positive");
  layers_.clear();
  names_.clear();
  shapes_.clear();
  const auto add_param = [&](std::string name, std::size_t rows, std::size_t cols) {
    names_.push_back(std::move(name));
    shapes_.emplace_back(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  };
  const auto add_stack = [&](Architecture arch, const std::string& prefix) {
    std::size_t in = input_dim_;
    for (std::size_t i = 0; i < spec_.num_layers; ++i) {
      const std::size_t out = i + 1 == spec_.num_layers ? spec_.output_dim : spec_.hidden_dim;
      layers_.push_back({arch, in, out, names_.size()});
      const std::string p = prefix + "layer" + std::to_string(i) + ".";
      switch (arch) {
        case Architecture::gcn:
        case Architecture::hyperconv:
          add_param(p + "theta", in, out);
          break;
        case Architecture::sage:
          add_param(p + "theta_self", in, out);
          add_param(p + "theta_nbr", in, out);
          break;
        case Architecture::gat:
          add_param(p + "theta", in, out);
          add_param(p + "att_src", out, 1);
          add_param(p + "att_dst", out, 1);
          break;
        case Architecture::gatv2:
          add_param(p + "theta_src", in, out);
          add_param(p + "theta_dst", in, out);
          add_param(p + "att", out, 1);
          break;
        case Architecture::hyperatten:
          add_param(p + "theta", in, out);
          add_param(p + "att_node", out, 1);
          add_param(p + "att_edge", out, 1);
          break;
        case Architecture::lp:
          throw ContractError("model: nested LP");
      }
      add_param(p + "bias", 1, out);
      in = out;
    }
  };

  if (spec_.architecture == Architecture::lp) {
    add_stack(spec_.inner1, "gnn1.");
    stack_split_ = layers_.size();
    add_stack(spec_.inner2, "gnn2.");
    head_param_ = names_.size();
    add_param("head.theta", 2 * spec_.output_dim, spec_.output_dim);
    add_param("head.bias", 1, spec_.output_dim);
  } else {
    add_stack(spec_.architecture, "");
    stack_split_ = layers_.size();
    head_param_ = names_.size();
  }
}

Model::Model(ModelSpec spec, std::size_t input_dim, bool classification, Rng& rng)
    : spec_(spec), input_dim_(input_dim), classification_(classification) {
  build_layout();
  params_.reserve(shapes_.size());
  for (std::size_t i = 0; i < shapes_.size(); ++i) {
    const auto [rows, cols] = shapes_[i];
    Matrix m = Matrix::Zero(rows, cols);
    if (!names_[i].ends_with("bias")) {
      const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
      for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = rng.uniform(-limit, limit);
    }
    params_.push_back(std::move(m));
  }
}

Model Model::from_parameters(ModelSpec spec, std::size_t input_dim, bool classification,
                             std::vector<Matrix> parameters) {
  Model model;
  model.spec_ = spec;
  model.input_dim_ = input_dim;
  model.classification_ = classification;
  model.build_layout();
  if (parameters.size() != model.shapes_.size())
    throw ContractError("model: expected " + std::to_string(model.shapes_.size()) +
                        " parameters, got " + std::to_string(parameters.size()));
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    const auto [rows, cols] = model.shapes_[i];
    if (parameters[i].rows() != rows || parameters[i].cols() != cols)
      throw ContractError("model: parameter " + model.names_[i] + " has shape " +
                          std::to_string(parameters[i].rows()) + "x" +
                          std::to_string(parameters[i].cols()) + ", expected " +
                          std::to_string(rows) + "x" + std::to_string(cols));
  }
  model.params_ = std::move(parameters);
  return model;
}

std::vector<Var> Model::bind(ad::Tape& tape) const {
  std::vector<Var> vars;
  vars.reserve(params_.size());
  for (const Matrix& p : params_) vars.push_back(tape.variable(p));
  return vars;
}

Var Model::run_stack(const GraphContext& ctx, Var x, std::span<const Var> params,
                     std::span<const Layer> layers, Rng* dropout_rng) const {
  Var h = x;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (dropout_rng && spec_.dropout > 0.0) h = ad::dropout(h, spec_.dropout, *dropout_rng);
    const Layer& layer = layers[i];
    const Var* p = params.data() + layer.first_param;
    switch (layer.arch) {
      case Architecture::gcn: h = gcn(ctx, h, p[0], p[1]); break;
      case Architecture::sage: h = sage(ctx, h, p[0], p[1], p[2]); break;
      case Architecture::gat: h = gat(ctx, h, p[0], p[1], p[2], p[3]); break;
      case Architecture::gatv2: h = gatv2(ctx, h, p[0], p[1], p[2], p[3]); break;
      case Architecture::hyperconv: h = hyperconv(ctx, h, p[0], p[1]); break;
      case Architecture::hyperatten: h = hyperatten(ctx, h, p[0], p[1], p[2], p[3]); break;
      case Architecture::lp: throw ContractError("model: nested LP");
    }
    if (i + 1 < layers.size()) h = ad::relu(h);
  }
  return h;
}

Forward Model::forward(ad::Tape& tape, const GraphContext& ctx, const Matrix& x,
                       std::span<const Var> params, Rng* dropout_rng) const {
  if (params.size() != params_.size()) throw ContractError("model: parameter count mismatch");
  if (static_cast<std::size_t>(x.cols()) != input_dim_)
    throw ContractError("model: feature width " + std::to_string(x.cols()) + ", model expects " +
                        std::to_string(input_dim_));
  const Var input = tape.constant(x);
  const std::span<const Layer> all(layers_);
  if (spec_.architecture != Architecture::lp) {
    const Var out = run_stack(ctx, input, params, all, dropout_rng);
    return {out, out};
  }
  const Var o1 = run_stack(ctx, input, params, all.first(stack_split_), dropout_rng);
  const Var o2 = run_stack(ctx, input, params, all.subspan(stack_split_), dropout_rng);
  const LpOutput lp =
      lp_gnn(o1, o2, params[head_param_], params[head_param_ + 1], classification_);
  return {lp.raw, lp.output};
}

Matrix Model::predict(const GraphContext& ctx, const Matrix& x) const {
  ad::Tape tape;
  std::vector<Var> vars;
  vars.reserve(params_.size());
  for (const Matrix& p : params_) vars.push_back(tape.constant(p));
  return forward(tape, ctx, x, vars, nullptr).output.value();
}

// ---------------------------------------------------------------------------

std::string serialize_model(const Model& model) {
  using nlohmann::ordered_json;
  const ModelSpec& s = model.spec();
  ordered_json spec = {{"model", s.name()},
                       {"num_layers", s.num_layers},
                       {"hidden_dim", s.hidden_dim},
                       {"dropout", s.dropout},
                       {"output_dim", s.output_dim}};
  ordered_json params = ordered_json::array();
  for (std::size_t i = 0; i < model.parameters().size(); ++i) {
    const Matrix& m = model.parameters()[i];
    params.push_back({{"name", model.parameter_names()[i]},
                      {"rows", m.rows()},
                      {"cols", m.cols()},
                      {"data", std::vector<double>(m.data(), m.data() + m.size())}});
  }
  ordered_json doc = {{"toolkit", kToolkitName},
                      {"version", kVersion},
                      {"spec", spec},
                      {"input_dim", model.input_dim()},
                      {"task", model.classification() ? "classification" : "regression"},
                      {"parameters", params}};
  return doc.dump(1) + "\n";
}

Model parse_model(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("model file: ") + e.what());
  }
  try {
    const auto& s = doc.at("spec");
    ModelSpec spec = parse_model_spec(s.at("model").get<std::string>());
    spec.num_layers = s.at("num_layers").get<std::size_t>();
    spec.hidden_dim = s.at("hidden_dim").get<std::size_t>();
    spec.dropout = s.at("dropout").get<double>();
    spec.output_dim = s.at("output_dim").get<std::size_t>();
    const std::string task = doc.at("task").get<std::string>();
    if (task != "classification" && task != "regression")
      throw SchemaError("model file: task must be classification or regression");
    std::vector<Matrix> params;
    for (const auto& p : doc.at("parameters")) {
      const auto rows = p.at("rows").get<Eigen::Index>();
      const auto cols = p.at("cols").get<Eigen::Index>();
      const auto data = p.at("data").get<std::vector<double>>();
      if (rows < 0 || cols < 0 || static_cast<std::size_t>(rows * cols) != data.size())
        throw SchemaError("model file: parameter data length does not match its shape");
      Matrix m(rows, cols);
      std::copy(data.begin(), data.end(), m.data());
      params.push_back(std::move(m));
    }
    return Model::from_parameters(spec, doc.at("input_dim").get<std::size_t>(),
                                  task == "classification", std::move(params));
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("model file: ") + e.what());
  }
}

}  // namespace hgb::gnn
