#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hgb {

using NodeId = std::uint32_t;

/// Dense row-major real matrix; rows are nodes (or hyperedges).
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RowVector = Eigen::Matrix<double, 1, Eigen::Dynamic>;

/// Unordered simple edge. Stored with the endpoints as given.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  auto operator<=>(const Edge&) const = default;
};

/// Returns the edge with endpoints ordered so that u <= v.
constexpr Edge canonical(Edge e) { return e.u <= e.v ? e : Edge{e.v, e.u}; }

/// Node-index set. Member order is preserved as stored.
using Hyperedge = std::vector<NodeId>;

struct Classification {
  std::size_t num_classes = 0;
  bool operator==(const Classification&) const = default;
};
struct Regression {
  bool operator==(const Regression&) const = default;
};
using Task = std::variant<Classification, Regression>;

using ClassLabels = std::vector<std::int64_t>;
using RealLabels = std::vector<double>;
using Labels = std::variant<ClassLabels, RealLabels>;

/// A graph with simple edges, weighted hyperedges and an acyclic parent
/// function. parent[v] == v marks a top-level node.
///
/// The matrix forms are derived on demand (see matrices.hpp): X is
/// node_features, E hyperedge_features, H the incidence of `hyperedges`,
/// W diag(hyperedge_weights), A the adjacency of `simple_edges` and R the
/// parent relation.
struct HybridGraph {
  std::size_t num_nodes = 0;
  Matrix node_features;
  std::optional<Matrix> hyperedge_features;
  std::vector<Edge> simple_edges;
  std::vector<Hyperedge> hyperedges;
  std::vector<double> hyperedge_weights;
  std::vector<NodeId> parent;
  Labels labels;
  Task task = Classification{1};

  /// Graph with the given structure, zero-width features, zero labels, unit
  /// weights and identity parent.
  static HybridGraph from_structure(std::size_t num_nodes,
                                    std::vector<Edge> edges,
                                    std::vector<Hyperedge> hyperedges = {});

  bool is_classification() const { return std::holds_alternative<Classification>(task); }
  std::size_t num_classes() const;
  std::size_t feature_dim() const { return static_cast<std::size_t>(node_features.cols()); }
  bool has_hierarchy() const;

  friend bool operator==(const HybridGraph& a, const HybridGraph& b);
};

std::vector<NodeId> identity_parent(std::size_t num_nodes);

/// Compressed neighbour lists over simple edges. Neighbour lists are sorted.
class Adjacency {
 public:
  Adjacency() = default;
  Adjacency(std::size_t num_nodes, std::span<const Edge> edges);

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool connected(NodeId u, NodeId v) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Severity { error, warning };

struct Violation {
  Severity severity = Severity::error;
  std::string field;
  std::size_t index = 0;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> errors;
  /// Suspicious but legal content, e.g. duplicate hyperedges.
  std::vector<Violation> warnings;

  bool ok() const { return errors.empty(); }
};

ValidationReport validate(const HybridGraph& g);

/// Throws ContractError listing the first violations if `g` is invalid.
void require_valid(const HybridGraph& g, std::string_view operation);

// ---------------------------------------------------------------------------
// Special cases and transformations

enum class GraphKind { Simple, Hypergraph, Hierarchical, GeneralHybrid };

std::string_view to_string(GraphKind kind);

/// Level of every node: 0 for top-level nodes, otherwise one more than the
/// level of its parent. Requires an acyclic parent function.
std::vector<std::size_t> node_levels(const HybridGraph& g);

GraphKind classify(const HybridGraph& g);

/// Keeps only edges of size two and flattens the hierarchy.
HybridGraph to_simple(const HybridGraph& g);
/// Keeps every edge and hyperedge and flattens the hierarchy.
HybridGraph to_hypergraph(const HybridGraph& g);
/// Turns every hyperedge into a virtual parent node linked to its members.
HybridGraph to_two_level_hierarchy(const HybridGraph& g);

/// Relabels node v as perm[v]. perm must be a permutation of 0..n-1.
HybridGraph permute_nodes(const HybridGraph& g, std::span<const NodeId> perm);

}  // namespace hgb
