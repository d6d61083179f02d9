#include "hgb/gnn/synthetic.hpp"

#include <algorithm>
#include <set>

#include "hgb/error.hpp"
#include "hgb/rng.hpp"

namespace hgb::gnn {

Dataset make_separable(const SyntheticConfig& c) {
  if (c.num_classes < 2) throw ContractError("make_separable: need at least two classes");
  if (c.num_nodes < 2 * c.num_classes)
    throw ContractError("make_separable: need at least two nodes per class");
  if (c.feature_dim < c.num_classes)
    throw ContractError("make_separable: feature_dim must be at least num_classes");
  if (c.hyperedge_size < 1) throw ContractError("make_separable: hyperedge_size must be positive");
  Rng rng(c.seed);
  const std::size_t n = c.num_nodes;

  ClassLabels labels(n);
  std::vector<std::vector<NodeId>> members(c.num_classes);
  for (NodeId v = 0; v < n; ++v) {
    labels[v] = static_cast<std::int64_t>(v % c.num_classes);
    members[v % c.num_classes].push_back(v);
  }

  Matrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(c.feature_dim));
  for (Eigen::Index v = 0; v < x.rows(); ++v)
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const bool hot = static_cast<std::int64_t>(j % static_cast<Eigen::Index>(c.num_classes)) ==
                       labels[static_cast<std::size_t>(v)];
      x(v, j) = (hot ? 1.0 : 0.0) + c.noise * rng.normal();
    }

  const auto target = static_cast<std::size_t>(c.avg_degree * static_cast<double>(n) / 2.0);
  const std::size_t max_edges = n * (n - 1) / 2;
  std::set<Edge> edges;
  for (std::size_t attempts = 0; edges.size() < std::min(target, max_edges) &&
                                 attempts < 100 * (target + 1);
       ++attempts) {
    const auto u = static_cast<NodeId>(rng.index(n));
    const std::size_t cu = u % c.num_classes;
    std::size_t cv = cu;
    if (!rng.bernoulli(c.intra_fraction)) cv = (cu + 1 + rng.index(c.num_classes - 1)) % c.num_classes;
    const NodeId v = members[cv][rng.index(members[cv].size())];
    if (u == v) continue;
    edges.insert(canonical(Edge{u, v}));
  }

  std::vector<Hyperedge> hyperedges;
  for (auto& group : members) {
    std::vector<NodeId> order = group;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);
    const std::size_t parts = std::max<std::size_t>(1, order.size() / c.hyperedge_size);
    for (std::size_t p = 0; p < parts; ++p) {
      Hyperedge he(order.begin() + static_cast<std::ptrdiff_t>(p * order.size() / parts),
                   order.begin() + static_cast<std::ptrdiff_t>((p + 1) * order.size() / parts));
      std::sort(he.begin(), he.end());
      hyperedges.push_back(std::move(he));
    }
  }
  std::sort(hyperedges.begin(), hyperedges.end());

  Dataset d;
  d.name = "synthetic-separable";
  d.feature_source = "class indicator plus gaussian noise";
  d.graph = HybridGraph::from_structure(n, {edges.begin(), edges.end()}, std::move(hyperedges));
  d.graph.node_features = std::move(x);
  if (c.regression) {
    d.graph.task = Regression{};
    d.graph.labels = RealLabels(labels.begin(), labels.end());
  } else {
    d.graph.task = Classification{c.num_classes};
    d.graph.labels = std::move(labels);
  }
  require_valid(d.graph, "make_separable");
  return d;
}

}  // namespace hgb::gnn
