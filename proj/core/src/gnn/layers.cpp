#include "hgb/gnn/layers.hpp"

#include <cmath>

#include "hgb/error.hpp"

namespace hgb::gnn {

namespace {

using Triplet = Eigen::Triplet<double>;

std::shared_ptr<const SparseMatrix> make_sparse(Eigen::Index rows, Eigen::Index cols,
                                                const std::vector<Triplet>& triplets) {
  auto m = std::make_shared<SparseMatrix>(rows, cols);
  m->setFromTriplets(triplets.begin(), triplets.end());
  m->makeCompressed();
  return m;
}

void require_nodes(const GraphContext& ctx, Var x, const char* op) {
  if (static_cast<std::size_t>(x.rows()) != ctx.num_nodes)
    throw ContractError(std::string(op) + ": feature rows " + std::to_string(x.rows()) +
                        " do not match graph size " + std::to_string(ctx.num_nodes));
}

void require_bias(Var bias, Eigen::Index width, const char* op) {
  if (bias.rows() != 1 || bias.cols() != width)
    throw ContractError(std::string(op) + ": bias must be 1 x " + std::to_string(width));
}

}  // namespace

GraphContext GraphContext::build(const HybridGraph& g) {
  return build(g.num_nodes, g.simple_edges, g.hyperedges, g.hyperedge_weights);
}

GraphContext GraphContext::build(std::size_t num_nodes, std::span<const Edge> edges,
                                 std::span<const Hyperedge> hyperedges,
                                 std::span<const double> weights) {
  if (weights.size() != hyperedges.size())
    throw ContractError("GraphContext: one weight per hyperedge required");
  GraphContext ctx;
  ctx.num_nodes = num_nodes;
  ctx.num_hyperedges = hyperedges.size();
  const auto n = static_cast<Eigen::Index>(num_nodes);
  const Adjacency adj(num_nodes, edges);

  std::vector<Triplet> norm, mean;
  auto src = std::make_shared<ad::Index>();
  auto dst = std::make_shared<ad::Index>();
  for (NodeId v = 0; v < num_nodes; ++v) {
    const double dv = static_cast<double>(adj.degree(v)) + 1.0;
    norm.emplace_back(v, v, 1.0 / dv);
    src->push_back(v);
    dst->push_back(v);
    const auto nbrs = adj.neighbors(v);
    for (NodeId u : nbrs) {
      const double du = static_cast<double>(adj.degree(u)) + 1.0;
      norm.emplace_back(v, u, 1.0 / std::sqrt(dv * du));
      mean.emplace_back(v, u, 1.0 / static_cast<double>(nbrs.size()));
      src->push_back(u);
      dst->push_back(v);
    }
  }
  ctx.gcn_norm = make_sparse(n, n, norm);
  ctx.neighbor_mean = make_sparse(n, n, mean);
  ctx.arc_src = std::move(src);
  ctx.arc_dst = std::move(dst);

  std::vector<double> node_weight(num_nodes, 0.0);
  std::size_t pairs = 0;
  for (std::size_t e = 0; e < hyperedges.size(); ++e) {
    if (hyperedges[e].empty()) throw ContractError("GraphContext: empty hyperedge");
    for (NodeId v : hyperedges[e]) {
      if (v >= num_nodes) throw ContractError("GraphContext: hyperedge member out of range");
      node_weight[v] += weights[e];
    }
    pairs += hyperedges[e].size();
  }
  auto inc_node = std::make_shared<ad::Index>();
  auto inc_edge = std::make_shared<ad::Index>();
  inc_node->reserve(pairs);
  inc_edge->reserve(pairs);
  ctx.inc_inv_size.resize(static_cast<Eigen::Index>(pairs), 1);
  ctx.inc_weight_share.resize(static_cast<Eigen::Index>(pairs), 1);
  std::vector<Triplet> gather, scatter;
  Eigen::Index p = 0;
  for (std::size_t e = 0; e < hyperedges.size(); ++e) {
    const double inv_size = 1.0 / static_cast<double>(hyperedges[e].size());
    for (NodeId v : hyperedges[e]) {
      inc_node->push_back(v);
      inc_edge->push_back(static_cast<Eigen::Index>(e));
      ctx.inc_inv_size(p, 0) = inv_size;
      ctx.inc_weight_share(p, 0) = weights[e] / node_weight[v];
      gather.emplace_back(static_cast<Eigen::Index>(e), v, inv_size);
      scatter.emplace_back(v, static_cast<Eigen::Index>(e), weights[e] / node_weight[v]);
      ++p;
    }
  }
  const auto m = static_cast<Eigen::Index>(hyperedges.size());
  ctx.inc_node = std::move(inc_node);
  ctx.inc_edge = std::move(inc_edge);
  ctx.hyper_gather = make_sparse(m, n, gather);
  ctx.hyper_scatter = make_sparse(n, m, scatter);
  return ctx;
}

// ---------------------------------------------------------------------------

Var linear(Var x, Var theta, Var bias) {
  require_bias(bias, theta.cols(), "linear");
  return ad::add_row(ad::matmul(x, theta), bias);
}

Var gcn(const GraphContext& ctx, Var x, Var theta, Var bias) {
  require_nodes(ctx, x, "gcn");
  require_bias(bias, theta.cols(), "gcn");
  return ad::add_row(ad::spmm(ctx.gcn_norm, ad::matmul(x, theta)), bias);
}

Var sage(const GraphContext& ctx, Var x, Var theta_self, Var theta_nbr, Var bias) {
  require_nodes(ctx, x, "sage");
  require_bias(bias, theta_self.cols(), "sage");
  const Var self = ad::matmul(x, theta_self);
  const Var nbr = ad::matmul(ad::spmm(ctx.neighbor_mean, x), theta_nbr);
  return ad::add_row(ad::add(self, nbr), bias);
}

Var gat(const GraphContext& ctx, Var x, Var theta, Var att_src, Var att_dst, Var bias,
        Var* alpha) {
  require_nodes(ctx, x, "gat");
  require_bias(bias, theta.cols(), "gat");
  const auto n = static_cast<Eigen::Index>(ctx.num_nodes);
  const Var h = ad::matmul(x, theta);
  const Var s_src = ad::gather_rows(ad::matmul(h, att_src), ctx.arc_src);
  const Var s_dst = ad::gather_rows(ad::matmul(h, att_dst), ctx.arc_dst);
  const Var score = ad::leaky_relu(ad::add(s_src, s_dst), 0.2);
  const Var a = ad::segment_softmax(score, ctx.arc_dst, n);
  if (alpha) *alpha = a;
  const Var messages = ad::mul_rows(ad::gather_rows(h, ctx.arc_src), a);
  return ad::add_row(ad::scatter_add_rows(messages, ctx.arc_dst, n), bias);
}

Var gatv2(const GraphContext& ctx, Var x, Var theta_src, Var theta_dst, Var att, Var bias,
          Var* alpha) {
  require_nodes(ctx, x, "gatv2");
  require_bias(bias, theta_src.cols(), "gatv2");
  const auto n = static_cast<Eigen::Index>(ctx.num_nodes);
  const Var hs = ad::matmul(x, theta_src);
  const Var hd = ad::matmul(x, theta_dst);
  const Var hs_arc = ad::gather_rows(hs, ctx.arc_src);
  const Var hidden = ad::leaky_relu(ad::add(hs_arc, ad::gather_rows(hd, ctx.arc_dst)), 0.2);
  const Var a = ad::segment_softmax(ad::matmul(hidden, att), ctx.arc_dst, n);
  if (alpha) *alpha = a;
  return ad::add_row(ad::scatter_add_rows(ad::mul_rows(hs_arc, a), ctx.arc_dst, n), bias);
}

Var hyperconv(const GraphContext& ctx, Var x, Var theta, Var bias) {
  require_nodes(ctx, x, "hyperconv");
  require_bias(bias, theta.cols(), "hyperconv");
  const Var z = ad::spmm(ctx.hyper_gather, ad::matmul(x, theta));
  return ad::add_row(ad::spmm(ctx.hyper_scatter, z), bias);
}

Var hyperatten(const GraphContext& ctx, Var x, Var theta, Var att_node, Var att_edge, Var bias,
               Var* alpha) {
  require_nodes(ctx, x, "hyperatten");
  require_bias(bias, theta.cols(), "hyperatten");
  ad::Tape& tape = x.tape();
  const auto n = static_cast<Eigen::Index>(ctx.num_nodes);
  const auto m = static_cast<Eigen::Index>(ctx.num_hyperedges);
  const Var h = ad::matmul(x, theta);
  const Var h_pair = ad::gather_rows(h, ctx.inc_node);
  // Sum aggregation for the hyperedge embedding used by the scores.
  const Var z = ad::scatter_add_rows(h_pair, ctx.inc_edge, m);
  const Var score = ad::leaky_relu(
      ad::add(ad::gather_rows(ad::matmul(h, att_node), ctx.inc_node),
              ad::gather_rows(ad::matmul(z, att_edge), ctx.inc_edge)),
      0.2);
  const Var a = ad::segment_softmax(score, ctx.inc_node, n);
  if (alpha) *alpha = a;
  const Var inv_size = tape.constant(ctx.inc_inv_size);
  const Var share = tape.constant(ctx.inc_weight_share);
  const Var edge_msg =
      ad::scatter_add_rows(ad::mul_rows(ad::mul_rows(h_pair, a), inv_size), ctx.inc_edge, m);
  const Var node_msg =
      ad::mul_rows(ad::mul_rows(ad::gather_rows(edge_msg, ctx.inc_edge), a), share);
  return ad::add_row(ad::scatter_add_rows(node_msg, ctx.inc_node, n), bias);
}

LpOutput lp_gnn(Var gnn1_out, Var gnn2_out, Var theta, Var bias, bool classification) {
  if (gnn1_out.cols() + gnn2_out.cols() != theta.rows())
    throw ContractError("lp_gnn: inner output widths " + std::to_string(gnn1_out.cols()) + " + " +
                        std::to_string(gnn2_out.cols()) + " do not match theta rows " +
                        std::to_string(theta.rows()));
  LpOutput out;
  out.raw = linear(ad::concat_cols(gnn1_out, gnn2_out), theta, bias);
  out.output = classification ? ad::log_softmax_rows(out.raw) : out.raw;
  return out;
}

// ---------------------------------------------------------------------------

Matrix gcn_layer(const Matrix& x, const GraphContext& ctx, const GcnParams& p) {
  ad::Tape t;
  return gcn(ctx, t.constant(x), t.constant(p.theta), t.constant(p.bias)).value();
}

Matrix sage_layer(const Matrix& x, const GraphContext& ctx, const SageParams& p) {
  ad::Tape t;
  return sage(ctx, t.constant(x), t.constant(p.theta_self), t.constant(p.theta_nbr),
              t.constant(p.bias))
      .value();
}

Matrix gat_layer(const Matrix& x, const GraphContext& ctx, const GatParams& p) {
  ad::Tape t;
  return gat(ctx, t.constant(x), t.constant(p.theta), t.constant(p.att_src),
             t.constant(p.att_dst), t.constant(p.bias))
      .value();
}

Matrix gatv2_layer(const Matrix& x, const GraphContext& ctx, const Gatv2Params& p) {
  ad::Tape t;
  return gatv2(ctx, t.constant(x), t.constant(p.theta_src), t.constant(p.theta_dst),
               t.constant(p.att), t.constant(p.bias))
      .value();
}

Matrix hyperatten_layer(const Matrix& x, const GraphContext& ctx, const HyperAttenParams& p) {
  ad::Tape t;
  return hyperatten(ctx, t.constant(x), t.constant(p.theta), t.constant(p.att_node),
                    t.constant(p.att_edge), t.constant(p.bias))
      .value();
}

Matrix hyperconv_layer(const Matrix& x, std::span<const Hyperedge> hyperedges,
                       std::span<const double> weights, const HyperConvParams& p) {
  if (x.cols() != p.theta.rows()) throw ContractError("hyperconv_layer: dimension mismatch");
  if (p.bias.rows() != 1 || p.bias.cols() != p.theta.cols())
    throw ContractError("hyperconv_layer: bias must be 1 x out");
  if (weights.size() != hyperedges.size())
    throw ContractError("hyperconv_layer: one weight per hyperedge required");
  const Matrix h = x * p.theta;
  const Eigen::Index n = x.rows();
  Matrix acc = Matrix::Zero(n, h.cols());
  std::vector<double> total(static_cast<std::size_t>(n), 0.0);
  for (std::size_t e = 0; e < hyperedges.size(); ++e) {
    RowVector z = RowVector::Zero(h.cols());
    for (NodeId v : hyperedges[e]) {
      if (v >= n) throw ContractError("hyperconv_layer: hyperedge member out of range");
      z += h.row(v);
    }
    z /= static_cast<double>(hyperedges[e].size());
    for (NodeId v : hyperedges[e]) {
      acc.row(v) += weights[e] * z;
      total[v] += weights[e];
    }
  }
  for (Eigen::Index v = 0; v < n; ++v) {
    if (total[static_cast<std::size_t>(v)] > 0.0) acc.row(v) /= total[static_cast<std::size_t>(v)];
    acc.row(v) += p.bias.row(0);
  }
  return acc;
}

namespace {

std::vector<double> column(const Var& v) {
  const Matrix& m = v.value();
  return std::vector<double>(m.data(), m.data() + m.size());
}

}  // namespace

std::vector<double> gat_coefficients(const Matrix& x, const GraphContext& ctx, const GatParams& p) {
  ad::Tape t;
  Var alpha;
  gat(ctx, t.constant(x), t.constant(p.theta), t.constant(p.att_src), t.constant(p.att_dst),
      t.constant(p.bias), &alpha);
  return column(alpha);
}

std::vector<double> gatv2_coefficients(const Matrix& x, const GraphContext& ctx,
                                       const Gatv2Params& p) {
  ad::Tape t;
  Var alpha;
  gatv2(ctx, t.constant(x), t.constant(p.theta_src), t.constant(p.theta_dst), t.constant(p.att),
        t.constant(p.bias), &alpha);
  return column(alpha);
}

std::vector<double> hyperatten_coefficients(const Matrix& x, const GraphContext& ctx,
                                            const HyperAttenParams& p) {
  ad::Tape t;
  Var alpha;
  hyperatten(ctx, t.constant(x), t.constant(p.theta), t.constant(p.att_node),
             t.constant(p.att_edge), t.constant(p.bias), &alpha);
  return column(alpha);
}

LpResult lp_gnn_forward(const Matrix& gnn1_out, const Matrix& gnn2_out, const Matrix& theta,
                        const Matrix& bias, bool classification) {
  ad::Tape t;
  const LpOutput out = lp_gnn(t.constant(gnn1_out), t.constant(gnn2_out), t.constant(theta),
                              t.constant(bias), classification);
  return {out.raw.value(), out.output.value()};
}

}  // namespace hgb::gnn
