#pragma once

#include <memory>
#include <vector>

#include "hgb/gnn/autograd.hpp"
#include "hgb/graph.hpp"
#include "hgb/matrices.hpp"

namespace hgb::gnn {

using ad::Var;

/// Structure-derived operators shared by every layer evaluated on one graph.
/// Built once per (sub)graph; cheap to share across forward passes.
struct GraphContext {
  std::size_t num_nodes = 0;
  std::size_t num_hyperedges = 0;

  /// D^-1/2 (A + I) D^-1/2 with D the degree of A + I.
  std::shared_ptr<const SparseMatrix> gcn_norm;
  /// Row-normalised adjacency; isolated nodes have empty rows.
  std::shared_ptr<const SparseMatrix> neighbor_mean;

  /// Attention arcs u -> v over N(v) plus the self loop, grouped by target.
  std::shared_ptr<const ad::Index> arc_src;
  std::shared_ptr<const ad::Index> arc_dst;

  /// Incidence pairs (node, hyperedge), one per membership.
  std::shared_ptr<const ad::Index> inc_node;
  std::shared_ptr<const ad::Index> inc_edge;
  /// Per pair: 1 / |e|.
  Matrix inc_inv_size;
  /// Per pair: w(e) / sum of w over hyperedges containing the node.
  Matrix inc_weight_share;

  /// D_e^-1 H^T (|E| x |V|) and D_v^-1 H W (|V| x |E|); rows of nodes in no
  /// hyperedge are empty.
  std::shared_ptr<const SparseMatrix> hyper_gather;
  std::shared_ptr<const SparseMatrix> hyper_scatter;

  static GraphContext build(const HybridGraph& g);
  static GraphContext build(std::size_t num_nodes, std::span<const Edge> edges,
                            std::span<const Hyperedge> hyperedges,
                            std::span<const double> weights);
};

// ---------------------------------------------------------------------------
// Layer parameters. Theta matrices are (in x out); biases and attention
// vectors are a single row or column as noted.

struct LinearParams {
  Matrix theta;
  Matrix bias;  // 1 x out
};

struct GcnParams {
  Matrix theta;
  Matrix bias;
};

struct SageParams {
  Matrix theta_self;
  Matrix theta_nbr;
  Matrix bias;
};

struct GatParams {
  Matrix theta;
  Matrix att_src;  // out x 1
  Matrix att_dst;  // out x 1
  Matrix bias;
};

struct Gatv2Params {
  Matrix theta_src;
  Matrix theta_dst;
  Matrix att;  // out x 1
  Matrix bias;
};

struct HyperConvParams {
  Matrix theta;
  Matrix bias;
};

struct HyperAttenParams {
  Matrix theta;
  Matrix att_node;  // out x 1
  Matrix att_edge;  // out x 1
  Matrix bias;
};

// ---------------------------------------------------------------------------
// Differentiable forms. Every Var argument lives on the same tape. `alpha`,
// when given, receives the attention coefficients (one row per arc or
// incidence pair, in context order).

Var linear(Var x, Var theta, Var bias);
Var gcn(const GraphContext& ctx, Var x, Var theta, Var bias);
Var sage(const GraphContext& ctx, Var x, Var theta_self, Var theta_nbr, Var bias);
Var gat(const GraphContext& ctx, Var x, Var theta, Var att_src, Var att_dst, Var bias,
        Var* alpha = nullptr);
Var gatv2(const GraphContext& ctx, Var x, Var theta_src, Var theta_dst, Var att, Var bias,
          Var* alpha = nullptr);
Var hyperconv(const GraphContext& ctx, Var x, Var theta, Var bias);
Var hyperatten(const GraphContext& ctx, Var x, Var theta, Var att_node, Var att_edge, Var bias,
               Var* alpha = nullptr);

struct LpOutput {
  /// theta . concat(gnn1, gnn2) + b
  Var raw;
  /// log-softmax of raw for classification, raw itself for regression.
  Var output;
};

/// Linear probe over two GNN outputs. theta is (c1 + c2) x out.
LpOutput lp_gnn(Var gnn1_out, Var gnn2_out, Var theta, Var bias, bool classification);

// ---------------------------------------------------------------------------
// Plain evaluation of a single layer.

Matrix gcn_layer(const Matrix& x, const GraphContext& ctx, const GcnParams& p);
Matrix sage_layer(const Matrix& x, const GraphContext& ctx, const SageParams& p);
Matrix gat_layer(const Matrix& x, const GraphContext& ctx, const GatParams& p);
Matrix gatv2_layer(const Matrix& x, const GraphContext& ctx, const Gatv2Params& p);
Matrix hyperatten_layer(const Matrix& x, const GraphContext& ctx, const HyperAttenParams& p);

/// Two-step hypergraph convolution written as explicit loops over
/// hyperedges: z_e is the mean of member rows of X.Theta, node v receives the
/// w-weighted average of the z_e it belongs to. Nodes in no hyperedge get the
/// bias alone.
Matrix hyperconv_layer(const Matrix& x, std::span<const Hyperedge> hyperedges,
                       std::span<const double> weights, const HyperConvParams& p);

/// Attention coefficients of gat / gatv2 / hyperatten, one per arc or pair.
std::vector<double> gat_coefficients(const Matrix& x, const GraphContext& ctx, const GatParams& p);
std::vector<double> gatv2_coefficients(const Matrix& x, const GraphContext& ctx,
                                       const Gatv2Params& p);
std::vector<double> hyperatten_coefficients(const Matrix& x, const GraphContext& ctx,
                                            const HyperAttenParams& p);

struct LpResult {
  Matrix raw;
  Matrix output;
};

LpResult lp_gnn_forward(const Matrix& gnn1_out, const Matrix& gnn2_out, const Matrix& theta,
                        const Matrix& bias, bool classification);

}  // namespace hgb::gnn
