#pragma once

#include <Eigen/Sparse>

#include "hgb/graph.hpp"

namespace hgb {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// H: |V| x |HE|, H(v, e) = 1 iff v is a member of hyperedge e.
SparseMatrix incidence_matrix(const HybridGraph& g);
/// A: |V| x |V| symmetric adjacency of the simple edges.
SparseMatrix adjacency_matrix(const HybridGraph& g);
/// R: |V| x |V|, R(u, v) = 1 iff parent[u] == v. Identity for flat graphs.
SparseMatrix parent_matrix(const HybridGraph& g);
/// Diagonal of W.
Eigen::VectorXd hyperedge_weight_vector(const HybridGraph& g);

}  // namespace hgb
