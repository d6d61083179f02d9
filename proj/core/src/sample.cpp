#include "hgb/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hgb/error.hpp"

namespace hgb {

SampledSubgraph induce(const HybridGraph& g, std::span<const NodeId> node_set) {
  if (node_set.empty()) throw ContractError("induce: empty node set");
  const std::size_t n = g.num_nodes;

  SampledSubgraph sub;
  sub.index_map.assign(n, SampledSubgraph::npos);
  for (NodeId v : node_set) {
    if (v >= n) throw ContractError("induce: node index " + std::to_string(v) + " out of range");
    sub.index_map[v] = 0;
  }
  for (NodeId v = 0; v < n; ++v) {
    if (sub.index_map[v] == SampledSubgraph::npos) continue;
    sub.index_map[v] = static_cast<NodeId>(sub.node_ids.size());
    sub.node_ids.push_back(v);
  }

  HybridGraph& local = sub.graph;
  const std::size_t m = sub.node_ids.size();
  local.num_nodes = m;
  local.task = g.task;
  local.node_features.resize(static_cast<Eigen::Index>(m), g.node_features.cols());
  for (std::size_t i = 0; i < m; ++i)
    local.node_features.row(static_cast<Eigen::Index>(i)) =
        g.node_features.row(sub.node_ids[i]);

  for (const Edge& e : g.simple_edges) {
    const NodeId a = sub.index_map[e.u];
    const NodeId b = sub.index_map[e.v];
    if (a != SampledSubgraph::npos && b != SampledSubgraph::npos) local.simple_edges.push_back({a, b});
  }

  for (std::size_t k = 0; k < g.hyperedges.size(); ++k) {
    Hyperedge masked;
    for (NodeId v : g.hyperedges[k])
      if (sub.index_map[v] != SampledSubgraph::npos) masked.push_back(sub.index_map[v]);
    if (masked.empty()) continue;
    local.hyperedges.push_back(std::move(masked));
    local.hyperedge_weights.push_back(g.hyperedge_weights[k]);
    sub.hyperedge_ids.push_back(k);
  }
  if (g.hyperedge_features) {
    Matrix rows(static_cast<Eigen::Index>(sub.hyperedge_ids.size()), g.hyperedge_features->cols());
    for (std::size_t i = 0; i < sub.hyperedge_ids.size(); ++i)
      rows.row(static_cast<Eigen::Index>(i)) =
          g.hyperedge_features->row(static_cast<Eigen::Index>(sub.hyperedge_ids[i]));
    local.hyperedge_features = std::move(rows);
  }

  local.parent.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const NodeId p = sub.index_map[g.parent[sub.node_ids[i]]];
    local.parent[i] = p == SampledSubgraph::npos ? static_cast<NodeId>(i) : p;
  }
  std::visit(
      [&](const auto& labels) {
        std::decay_t<decltype(labels)> picked;
        picked.reserve(m);
        for (NodeId v : sub.node_ids) picked.push_back(labels[v]);
        local.labels = std::move(picked);
      },
      g.labels);
  return sub;
}

std::vector<std::size_t> weighted_draw_without_replacement(std::span<const double> weights,
                                                           std::size_t count, Rng& rng) {
  // Exponential-clock formulation (Efraimidis-Spirakis): item i gets key
  // -log(U_i)/w_i ~ Exp(w_i); ascending keys reproduce successive weighted
  // draws without replacement.
  struct Keyed {
    double key;
    std::size_t index;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double u = rng.uniform_open();
    const double w = weights[i];
    if (!(w >= 0.0) || !std::isfinite(w))
      throw ContractError("weighted_draw_without_replacement: invalid weight");
    if (w == 0.0) continue;
    keyed.push_back({-std::log(u) / w, i});
  }
  if (count > keyed.size())
    throw ContractError("weighted_draw_without_replacement: not enough items with positive weight");
  auto by_key = [](const Keyed& a, const Keyed& b) {
    return a.key < b.key || (a.key == b.key && a.index < b.index);
  };
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(count),
                    keyed.end(), by_key);
  std::vector<std::size_t> drawn(count);
  for (std::size_t i = 0; i < count; ++i) drawn[i] = keyed[i].index;
  return drawn;
}

namespace {

void check_budget(std::size_t budget, std::size_t available, const char* what) {
  if (budget < 1 || budget > available)
    throw ContractError(std::string(what) + ": budget " + std::to_string(budget) +
                        " outside [1, " + std::to_string(available) + "]");
}

}  // namespace

SampledSubgraph sample_node(const HybridGraph& g, std::size_t budget, Rng& rng) {
  check_budget(budget, g.num_nodes, "sample_node");
  const Adjacency adj(g.num_nodes, g.simple_edges);
  std::vector<double> weights(g.num_nodes);
  for (NodeId v = 0; v < g.num_nodes; ++v) {
    const double d = static_cast<double>(adj.degree(v)) + 1.0;
    weights[v] = d * d;
  }
  const auto drawn = weighted_draw_without_replacement(weights, budget, rng);
  std::vector<NodeId> nodes(drawn.begin(), drawn.end());
  return induce(g, nodes);
}

SampledSubgraph sample_edge(const HybridGraph& g, std::size_t budget_edges, Rng& rng) {
  if (g.simple_edges.empty()) throw ContractError("sample_edge: graph has no simple edges");
  check_budget(budget_edges, g.simple_edges.size(), "sample_edge");
  const Adjacency adj(g.num_nodes, g.simple_edges);
  std::vector<double> weights(g.simple_edges.size());
  for (std::size_t i = 0; i < g.simple_edges.size(); ++i) {
    const Edge e = g.simple_edges[i];
    weights[i] = 1.0 / static_cast<double>(adj.degree(e.u)) +
                 1.0 / static_cast<double>(adj.degree(e.v));
  }
  const auto drawn = weighted_draw_without_replacement(weights, budget_edges, rng);
  std::vector<NodeId> nodes;
  nodes.reserve(2 * drawn.size());
  for (std::size_t i : drawn) {
    nodes.push_back(g.simple_edges[i].u);
    nodes.push_back(g.simple_edges[i].v);
  }
  return induce(g, nodes);
}

SampledSubgraph sample_rw(const HybridGraph& g, std::size_t num_roots, std::size_t walk_length,
                          Rng& rng) {
  if (num_roots < 1) throw ContractError("sample_rw: need at least one root");
  if (g.num_nodes == 0) throw ContractError("sample_rw: empty graph");
  const Adjacency adj(g.num_nodes, g.simple_edges);
  std::vector<NodeId> visited;
  visited.reserve(num_roots * (walk_length + 1));
  for (std::size_t r = 0; r < num_roots; ++r) {
    NodeId v = static_cast<NodeId>(rng.index(g.num_nodes));
    visited.push_back(v);
    for (std::size_t step = 0; step < walk_length; ++step) {
      const auto nbrs = adj.neighbors(v);
      if (nbrs.empty()) break;
      v = nbrs[rng.index(nbrs.size())];
      visited.push_back(v);
    }
  }
  return induce(g, visited);
}

SampledSubgraph sample_random_node(const HybridGraph& g, std::size_t budget, Rng& rng) {
  check_budget(budget, g.num_nodes, "sample_random_node");
  std::vector<NodeId> order(g.num_nodes);
  std::iota(order.begin(), order.end(), NodeId{0});
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < budget; ++i)
    std::swap(order[i], order[i + rng.index(g.num_nodes - i)]);
  order.resize(budget);
  return induce(g, order);
}

SampledSubgraph sample_random_hyperedge(const HybridGraph& g, std::size_t budget_hyperedges,
                                        Rng& rng) {
  if (g.hyperedges.empty())
    throw ContractError("sample_random_hyperedge: graph has no hyperedges");
  check_budget(budget_hyperedges, g.hyperedges.size(), "sample_random_hyperedge");
  std::vector<std::size_t> order(g.hyperedges.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < budget_hyperedges; ++i)
    std::swap(order[i], order[i + rng.index(order.size() - i)]);
  std::vector<NodeId> nodes;
  for (std::size_t i = 0; i < budget_hyperedges; ++i)
    nodes.insert(nodes.end(), g.hyperedges[order[i]].begin(), g.hyperedges[order[i]].end());
  return induce(g, nodes);
}

SamplerKind parse_sampler_kind(std::string_view name) {
  if (name == "node") return SamplerKind::node;
  if (name == "edge") return SamplerKind::edge;
  if (name == "rw") return SamplerKind::random_walk;
  if (name == "rand-node") return SamplerKind::random_node;
  if (name == "rand-hyperedge") return SamplerKind::random_hyperedge;
  throw ContractError("unknown sampler '" + std::string(name) + "'");
}

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::node: return "node";
    case SamplerKind::edge: return "edge";
    case SamplerKind::random_walk: return "rw";
    case SamplerKind::random_node: return "rand-node";
    case SamplerKind::random_hyperedge: return "rand-hyperedge";
  }
  return "unknown";
}

SampledSubgraph draw(const HybridGraph& g, const SamplerSpec& spec, Rng& rng) {
  switch (spec.kind) {
    case SamplerKind::node: return sample_node(g, spec.budget, rng);
    case SamplerKind::edge: return sample_edge(g, spec.budget, rng);
    case SamplerKind::random_walk: return sample_rw(g, spec.budget, spec.walk_length, rng);
    case SamplerKind::random_node: return sample_random_node(g, spec.budget, rng);
    case SamplerKind::random_hyperedge: return sample_random_hyperedge(g, spec.budget, rng);
  }
  throw ContractError("draw: unknown sampler kind");
}

}  // namespace hgb
