#include "hgb/matrices.hpp"

#include <vector>

namespace hgb {

namespace {

using Triplet = Eigen::Triplet<double>;

SparseMatrix from_triplets(std::size_t rows, std::size_t cols, const std::vector<Triplet>& t) {
  SparseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

}  // namespace

SparseMatrix incidence_matrix(const HybridGraph& g) {
  std::vector<Triplet> t;
  for (std::size_t k = 0; k < g.hyperedges.size(); ++k)
    for (NodeId v : g.hyperedges[k])
      t.emplace_back(static_cast<int>(v), static_cast<int>(k), 1.0);
  return from_triplets(g.num_nodes, g.hyperedges.size(), t);
}

SparseMatrix adjacency_matrix(const HybridGraph& g) {
  std::vector<Triplet> t;
  t.reserve(2 * g.simple_edges.size());
  for (const Edge& e : g.simple_edges) {
    t.emplace_back(static_cast<int>(e.u), static_cast<int>(e.v), 1.0);
    t.emplace_back(static_cast<int>(e.v), static_cast<int>(e.u), 1.0);
  }
  return from_triplets(g.num_nodes, g.num_nodes, t);
}

SparseMatrix parent_matrix(const HybridGraph& g) {
  std::vector<Triplet> t;
  t.reserve(g.parent.size());
  for (std::size_t u = 0; u < g.parent.size(); ++u)
    t.emplace_back(static_cast<int>(u), static_cast<int>(g.parent[u]), 1.0);
  return from_triplets(g.num_nodes, g.num_nodes, t);
}

Eigen::VectorXd hyperedge_weight_vector(const HybridGraph& g) {
  Eigen::VectorXd w(static_cast<Eigen::Index>(g.hyperedge_weights.size()));
  for (std::size_t k = 0; k < g.hyperedge_weights.size(); ++k)
    w(static_cast<Eigen::Index>(k)) = g.hyperedge_weights[k];
  return w;
}

}  // namespace hgb
