#include "hgb/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "hgb/error.hpp"

namespace hgb {

namespace {

bool matrices_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

std::size_t labels_size(const Labels& labels) {
  return std::visit([](const auto& v) { return v.size(); }, labels);
}

}  // namespace

HybridGraph HybridGraph::from_structure(std::size_t num_nodes, std::vector<Edge> edges,
                                        std::vector<Hyperedge> hyperedges) {
  HybridGraph g;
  g.num_nodes = num_nodes;
  g.node_features = Matrix::Zero(static_cast<Eigen::Index>(num_nodes), 0);
  g.simple_edges = std::move(edges);
  g.hyperedge_weights.assign(hyperedges.size(), 1.0);
  g.hyperedges = std::move(hyperedges);
  g.parent = identity_parent(num_nodes);
  g.labels = ClassLabels(num_nodes, 0);
  g.task = Classification{1};
  return g;
}

std::size_t HybridGraph::num_classes() const {
  if (const auto* c = std::get_if<Classification>(&task)) return c->num_classes;
  return 0;
}

bool HybridGraph::has_hierarchy() const {
  for (std::size_t v = 0; v < parent.size(); ++v)
    if (parent[v] != v) return true;
  return false;
}

bool operator==(const HybridGraph& a, const HybridGraph& b) {
  if (a.num_nodes != b.num_nodes) return false;
  if (!matrices_equal(a.node_features, b.node_features)) return false;
  if (a.hyperedge_features.has_value() != b.hyperedge_features.has_value()) return false;
  if (a.hyperedge_features && !matrices_equal(*a.hyperedge_features, *b.hyperedge_features))
    return false;
  return a.simple_edges == b.simple_edges && a.hyperedges == b.hyperedges &&
         a.hyperedge_weights == b.hyperedge_weights && a.parent == b.parent &&
         a.labels == b.labels && a.task == b.task;
}

std::vector<NodeId> identity_parent(std::size_t num_nodes) {
  std::vector<NodeId> parent(num_nodes);
  std::iota(parent.begin(), parent.end(), NodeId{0});
  return parent;
}

Adjacency::Adjacency(std::size_t num_nodes, std::span<const Edge> edges)
    : offsets_(num_nodes + 1, 0) {
  for (const Edge& e : edges) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
  neighbors_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges) {
    neighbors_[cursor[e.u]++] = e.v;
    neighbors_[cursor[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < num_nodes; ++v)
    std::sort(neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
}

bool Adjacency::connected(NodeId u, NodeId v) const {
  const auto n = neighbors(u);
  return std::binary_search(n.begin(), n.end(), v);
}

// ---------------------------------------------------------------------------

ValidationReport validate(const HybridGraph& g) {
  ValidationReport report;
  const std::size_t n = g.num_nodes;
  auto error = [&](std::string field, std::size_t index, std::string message) {
    report.errors.push_back({Severity::error, std::move(field), index, std::move(message)});
  };

  if (static_cast<std::size_t>(g.node_features.rows()) != n)
    error("node_features", 0,
          "node_features has " + std::to_string(g.node_features.rows()) + " rows, expected " +
              std::to_string(n));
  if (!g.node_features.allFinite()) error("node_features", 0, "non-finite feature value");
  if (g.hyperedge_features &&
      static_cast<std::size_t>(g.hyperedge_features->rows()) != g.hyperedges.size())
    error("hyperedge_features", 0,
          "hyperedge_features has " + std::to_string(g.hyperedge_features->rows()) +
              " rows, expected " + std::to_string(g.hyperedges.size()));

  // Simple edges.
  std::vector<std::pair<Edge, std::size_t>> seen;
  seen.reserve(g.simple_edges.size());
  for (std::size_t i = 0; i < g.simple_edges.size(); ++i) {
    const Edge e = g.simple_edges[i];
    if (e.u >= n || e.v >= n) {
      error("edges", i, "edge at index " + std::to_string(i) + " has node index out of range");
      continue;
    }
    if (e.u == e.v) {
      error("edges", i, "self-loop at index " + std::to_string(i));
      continue;
    }
    seen.emplace_back(canonical(e), i);
  }
  std::sort(seen.begin(), seen.end());
  for (std::size_t i = 1; i < seen.size(); ++i)
    if (seen[i].first == seen[i - 1].first)
      error("edges", seen[i].second,
            "duplicate edge {" + std::to_string(seen[i].first.u) + "," +
                std::to_string(seen[i].first.v) + "} at index " + std::to_string(seen[i].second));

  // Hyperedges.
  std::map<std::vector<NodeId>, std::size_t> member_sets;
  for (std::size_t k = 0; k < g.hyperedges.size(); ++k) {
    const Hyperedge& he = g.hyperedges[k];
    if (he.empty()) {
      error("hyperedges", k, "empty hyperedge at index " + std::to_string(k));
      continue;
    }
    std::vector<NodeId> sorted = he;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.back() >= n) {
      error("hyperedges", k,
            "hyperedge at index " + std::to_string(k) + " has node index out of range");
      continue;
    }
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      error("hyperedges", k, "duplicate member in hyperedge at index " + std::to_string(k));
      continue;
    }
    auto [it, inserted] = member_sets.emplace(std::move(sorted), k);
    if (!inserted)
      report.warnings.push_back({Severity::warning, "hyperedges", k,
                                 "hyperedge " + std::to_string(k) + " duplicates hyperedge " +
                                     std::to_string(it->second)});
  }

  if (g.hyperedge_weights.size() != g.hyperedges.size())
    error("hyperedge_weights", 0,
          "hyperedge_weights has " + std::to_string(g.hyperedge_weights.size()) +
              " entries, expected " + std::to_string(g.hyperedges.size()));
  for (std::size_t k = 0; k < g.hyperedge_weights.size(); ++k) {
    const double w = g.hyperedge_weights[k];
    if (!(w > 0.0) || !std::isfinite(w))
      error("hyperedge_weights", k, "non-positive weight at index " + std::to_string(k));
  }

  // Parent function.
  bool parent_in_range = g.parent.size() == n;
  if (!parent_in_range)
    error("parent", 0,
          "parent has " + std::to_string(g.parent.size()) + " entries, expected " +
              std::to_string(n));
  for (std::size_t v = 0; v < g.parent.size(); ++v) {
    if (g.parent[v] >= n) {
      error("parent", v, "parent of node " + std::to_string(v) + " out of range");
      parent_in_range = false;
    }
  }
  if (parent_in_range) {
    enum : unsigned char { unvisited, active, done };
    std::vector<unsigned char> state(n, unvisited);
    std::vector<NodeId> chain;
    for (std::size_t start = 0; start < n; ++start) {
      if (state[start] != unvisited) continue;
      chain.clear();
      NodeId v = static_cast<NodeId>(start);
      while (state[v] == unvisited) {
        state[v] = active;
        chain.push_back(v);
        if (g.parent[v] == v) break;
        v = g.parent[v];
      }
      if (state[v] == active && g.parent[v] != v) {
        error("parent", v, "parent cycle through node " + std::to_string(v));
      }
      for (NodeId u : chain) state[u] = done;
    }
  }

  // Labels.
  if (labels_size(g.labels) != n)
    error("labels", 0,
          "labels has " + std::to_string(labels_size(g.labels)) + " entries, expected " +
              std::to_string(n));
  if (const auto* c = std::get_if<Classification>(&g.task)) {
    const auto* cls = std::get_if<ClassLabels>(&g.labels);
    if (cls == nullptr) {
      error("labels", 0, "classification task requires integer labels");
    } else {
      for (std::size_t v = 0; v < cls->size(); ++v) {
        const auto y = (*cls)[v];
        if (y < 0 || static_cast<std::size_t>(y) >= c->num_classes) {
          error("labels", v, "label of node " + std::to_string(v) + " outside [0, num_classes)");
          break;
        }
      }
    }
  } else if (!std::holds_alternative<RealLabels>(g.labels)) {
    error("labels", 0, "regression task requires real labels");
  }
  return report;
}

void require_valid(const HybridGraph& g, std::string_view operation) {
  const ValidationReport report = validate(g);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << operation << ": invalid hybrid graph (" << report.errors.size() << " violation"
      << (report.errors.size() == 1 ? "" : "s") << ")";
  for (std::size_t i = 0; i < report.errors.size() && i < 5; ++i)
    msg << "; " << report.errors[i].message;
  throw ContractError(msg.str());
}

// ---------------------------------------------------------------------------

std::string_view to_string(GraphKind kind) {
  switch (kind) {
    case GraphKind::Simple: return "simple";
    case GraphKind::Hypergraph: return "hypergraph";
    case GraphKind::Hierarchical: return "hierarchical";
    case GraphKind::GeneralHybrid: return "hybrid";
  }
  return "unknown";
}

std::vector<std::size_t> node_levels(const HybridGraph& g) {
  const std::size_t n = g.num_nodes;
  constexpr std::size_t unknown = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(n, unknown);
  std::vector<NodeId> chain;
  for (std::size_t start = 0; start < n; ++start) {
    chain.clear();
    NodeId v = static_cast<NodeId>(start);
    while (level[v] == unknown && g.parent[v] != v) {
      chain.push_back(v);
      v = g.parent[v];
      if (chain.size() > n) throw ContractError("node_levels: parent function has a cycle");
    }
    if (level[v] == unknown) level[v] = 0;
    std::size_t l = level[v];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) level[*it] = ++l;
  }
  return level;
}

GraphKind classify(const HybridGraph& g) {
  require_valid(g, "classify");
  // Singleton hyperedges carry no pairwise or higher-order relation and do
  // not affect the special-case tests.
  bool has_large = false;
  for (const Hyperedge& he : g.hyperedges) has_large = has_large || he.size() >= 3;
  const bool flat = !g.has_hierarchy();

  if (flat) return has_large ? GraphKind::Hypergraph : GraphKind::Simple;
  if (has_large) return GraphKind::GeneralHybrid;

  std::vector<Edge> pairs = g.simple_edges;
  for (const Hyperedge& he : g.hyperedges)
    if (he.size() == 2) pairs.push_back({he[0], he[1]});
  const Adjacency adj(g.num_nodes, pairs);
  const auto level = node_levels(g);
  for (NodeId v = 0; v < g.num_nodes; ++v) {
    if (level[v] == 0) continue;
    bool linked_up = false;
    for (NodeId u : adj.neighbors(v)) {
      if (level[u] + 1 == level[v]) {
        linked_up = true;
        break;
      }
    }
    if (!linked_up) return GraphKind::GeneralHybrid;
  }
  return GraphKind::Hierarchical;
}

namespace {

HybridGraph keep_hyperedges_if(const HybridGraph& g, auto predicate) {
  HybridGraph out = g;
  out.hyperedges.clear();
  out.hyperedge_weights.clear();
  std::vector<Eigen::Index> kept_rows;
  for (std::size_t k = 0; k < g.hyperedges.size(); ++k) {
    if (!predicate(g.hyperedges[k])) continue;
    out.hyperedges.push_back(g.hyperedges[k]);
    out.hyperedge_weights.push_back(g.hyperedge_weights[k]);
    kept_rows.push_back(static_cast<Eigen::Index>(k));
  }
  if (g.hyperedge_features) {
    Matrix rows(static_cast<Eigen::Index>(kept_rows.size()), g.hyperedge_features->cols());
    for (std::size_t i = 0; i < kept_rows.size(); ++i)
      rows.row(static_cast<Eigen::Index>(i)) = g.hyperedge_features->row(kept_rows[i]);
    out.hyperedge_features = std::move(rows);
  }
  out.parent = identity_parent(g.num_nodes);
  return out;
}

}  // namespace

HybridGraph to_simple(const HybridGraph& g) {
  require_valid(g, "to_simple");
  return keep_hyperedges_if(g, [](const Hyperedge& he) { return he.size() == 2; });
}

HybridGraph to_hypergraph(const HybridGraph& g) {
  require_valid(g, "to_hypergraph");
  HybridGraph out = g;
  out.parent = identity_parent(g.num_nodes);
  return out;
}

HybridGraph to_two_level_hierarchy(const HybridGraph& g) {
  require_valid(g, "to_two_level_hierarchy");
  const std::size_t n = g.num_nodes;
  const std::size_t m = g.hyperedges.size();

  HybridGraph out;
  out.num_nodes = n + m;
  out.task = g.task;
  out.node_features = Matrix::Zero(static_cast<Eigen::Index>(n + m), g.node_features.cols());
  out.node_features.topRows(static_cast<Eigen::Index>(n)) = g.node_features;
  out.simple_edges = g.simple_edges;
  out.parent = g.parent;
  out.parent.resize(n + m);
  std::vector<bool> assigned(n, false);

  for (std::size_t k = 0; k < m; ++k) {
    const auto virtual_node = static_cast<NodeId>(n + k);
    out.parent[virtual_node] = virtual_node;
    const Hyperedge& he = g.hyperedges[k];
    for (NodeId v : he) {
      out.simple_edges.push_back({v, virtual_node});
      out.node_features.row(virtual_node) += g.node_features.row(v);
      if (!assigned[v]) {
        out.parent[v] = virtual_node;
        assigned[v] = true;
      }
    }
    out.node_features.row(virtual_node) /= static_cast<double>(he.size());
  }

  if (const auto* cls = std::get_if<ClassLabels>(&g.labels)) {
    ClassLabels labels = *cls;
    labels.resize(n + m, 0);
    for (std::size_t k = 0; k < m; ++k) {
      std::map<std::int64_t, std::size_t> votes;
      for (NodeId v : g.hyperedges[k]) ++votes[(*cls)[v]];
      // map is ordered, so ties resolve to the smallest label
      auto best = std::max_element(votes.begin(), votes.end(), [](const auto& a, const auto& b) {
        return a.second < b.second;
      });
      labels[n + k] = best->first;
    }
    out.labels = std::move(labels);
  } else {
    const auto& real = std::get<RealLabels>(g.labels);
    RealLabels labels = real;
    labels.resize(n + m, 0.0);
    for (std::size_t k = 0; k < m; ++k) {
      double sum = 0.0;
      for (NodeId v : g.hyperedges[k]) sum += real[v];
      labels[n + k] = sum / static_cast<double>(g.hyperedges[k].size());
    }
    out.labels = std::move(labels);
  }
  return out;
}

HybridGraph permute_nodes(const HybridGraph& g, std::span<const NodeId> perm) {
  const std::size_t n = g.num_nodes;
  if (perm.size() != n) throw ContractError("permute_nodes: permutation size mismatch");
  std::vector<bool> hit(n, false);
  for (NodeId p : perm) {
    if (p >= n || hit[p]) throw ContractError("permute_nodes: not a permutation");
    hit[p] = true;
  }

  HybridGraph out = g;
  for (std::size_t v = 0; v < n; ++v) {
    out.node_features.row(perm[v]) = g.node_features.row(static_cast<Eigen::Index>(v));
    out.parent[perm[v]] = perm[g.parent[v]];
  }
  for (Edge& e : out.simple_edges) e = {perm[e.u], perm[e.v]};
  for (Hyperedge& he : out.hyperedges)
    for (NodeId& v : he) v = perm[v];
  std::visit(
      [&](auto& labels) {
        auto original = labels;
        for (std::size_t v = 0; v < n; ++v) labels[perm[v]] = original[v];
      },
      out.labels);
  return out;
}

}  // namespace hgb
