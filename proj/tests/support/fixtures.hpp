#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <vector>

#include "hgb/gnn/autograd.hpp"
#include "hgb/graph.hpp"
#include "hgb/rng.hpp"

namespace hgb::testing {

inline Matrix random_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = scale * rng.uniform(-1.0, 1.0);
  return m;
}

inline std::vector<Edge> random_edges(Rng& rng, std::size_t n, double density) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.bernoulli(density)) edges.push_back({u, v});
  return edges;
}

struct RandomGraphOptions {
  std::size_t min_nodes = 1;
  std::size_t max_nodes = 12;
  double max_density = 0.6;
  std::size_t max_hyperedges = 6;
  std::size_t feature_dim = 3;
  std::size_t num_classes = 3;
  bool hierarchy = true;
  bool weights = true;
};

/// Random valid hybrid graph. Parents point to lower-index nodes, so the
/// parent function is acyclic by construction.
inline HybridGraph random_hybrid_graph(Rng& rng, const RandomGraphOptions& o = {}) {
  const std::size_t n = o.min_nodes + rng.index(o.max_nodes - o.min_nodes + 1);
  std::vector<Hyperedge> hyperedges;
  const std::size_t m = rng.index(o.max_hyperedges + 1);
  for (std::size_t k = 0; k < m; ++k) {
    std::set<NodeId> members;
    const std::size_t size = 1 + rng.index(std::min<std::size_t>(n, 5));
    while (members.size() < size) members.insert(static_cast<NodeId>(rng.index(n)));
    hyperedges.emplace_back(members.begin(), members.end());
  }
  HybridGraph g = HybridGraph::from_structure(
      n, random_edges(rng, n, rng.uniform() * o.max_density), std::move(hyperedges));
  g.node_features = random_matrix(rng, static_cast<Eigen::Index>(n),
                                  static_cast<Eigen::Index>(o.feature_dim));
  if (o.weights)
    for (double& w : g.hyperedge_weights) w = 0.5 + rng.uniform() * 2.0;
  if (o.hierarchy)
    for (NodeId v = 1; v < n; ++v)
      if (rng.bernoulli(0.3)) g.parent[v] = static_cast<NodeId>(rng.index(v));
  ClassLabels labels(n);
  for (auto& l : labels) l = static_cast<std::int64_t>(rng.index(o.num_classes));
  g.labels = labels;
  g.task = Classification{o.num_classes};
  return g;
}

/// Every maximal clique of size >= min_size, by testing all 2^n subsets.
inline std::vector<Hyperedge> brute_force_maximal_cliques(std::size_t n,
                                                          const std::vector<Edge>& edges,
                                                          std::size_t min_size) {
  std::vector<std::uint32_t> adj(n, 0);
  for (const Edge& e : edges) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  const auto is_clique = [&](std::uint32_t set) {
    for (std::size_t v = 0; v < n; ++v)
      if ((set >> v & 1u) && (set & ~(1u << v) & ~adj[v])) return false;
    return true;
  };
  std::vector<Hyperedge> out;
  for (std::uint32_t set = 1; set < (1u << n); ++set) {
    if (static_cast<std::size_t>(__builtin_popcount(set)) < min_size || !is_clique(set)) continue;
    bool maximal = true;
    for (std::size_t v = 0; v < n && maximal; ++v)
      if (!(set >> v & 1u) && is_clique(set | 1u << v)) maximal = false;
    if (!maximal) continue;
    Hyperedge he;
    for (std::size_t v = 0; v < n; ++v)
      if (set >> v & 1u) he.push_back(static_cast<NodeId>(v));
    out.push_back(he);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Result of comparing reverse-mode gradients with central differences.
struct GradCheck {
  double max_rel_error = 0.0;
  std::size_t worst_input = 0;
};

/// f builds a scalar (1x1) on the tape from one Var per input. The relative
/// error of input i is |g_analytic - g_numeric|_2 / max(|g_analytic|_2 +
/// |g_numeric|_2, floor). The floor keeps gradients that are zero in exact
/// arithmetic (central differences then return rounding noise near 1e-11)
/// from reading as a relative error of 1.
inline GradCheck check_gradients(
    const std::function<ad::Var(ad::Tape&, const std::vector<ad::Var>&)>& f,
    std::vector<Matrix> inputs, double step = 1e-5, double floor = 1e-6) {
  std::vector<Matrix> analytic;
  {
    ad::Tape tape;
    std::vector<ad::Var> vars;
    for (const Matrix& m : inputs) vars.push_back(tape.variable(m));
    tape.backward(f(tape, vars));
    for (const ad::Var& v : vars) analytic.push_back(v.grad());
  }
  const auto evaluate = [&](const std::vector<Matrix>& values) {
    ad::Tape tape;
    std::vector<ad::Var> vars;
    for (const Matrix& m : values) vars.push_back(tape.constant(m));
    return f(tape, vars).value()(0, 0);
  };
  GradCheck result;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    Matrix numeric(inputs[i].rows(), inputs[i].cols());
    for (Eigen::Index k = 0; k < inputs[i].size(); ++k) {
      const double saved = inputs[i].data()[k];
      inputs[i].data()[k] = saved + step;
      const double plus = evaluate(inputs);
      inputs[i].data()[k] = saved - step;
      const double minus = evaluate(inputs);
      inputs[i].data()[k] = saved;
      numeric.data()[k] = (plus - minus) / (2.0 * step);
    }
    const double denom = std::max(analytic[i].norm() + numeric.norm(), floor);
    const double rel = (analytic[i] - numeric).norm() / denom;
    if (rel > result.max_rel_error) {
      result.max_rel_error = rel;
      result.worst_input = i;
    }
  }
  return result;
}

/// Reduces a matrix Var to a scalar with fixed random row and column weights,
/// so every output entry influences the gradient differently.
inline ad::Var random_projection(ad::Tape& tape, ad::Var x, std::uint64_t seed) {
  Rng rng(seed);
  const ad::Var rows = tape.constant(random_matrix(rng, x.rows(), 1));
  const ad::Var cols = tape.constant(random_matrix(rng, x.cols(), 1));
  return ad::mean(ad::matmul(ad::mul_rows(x, rows), cols));
}

}  // namespace hgb::testing
