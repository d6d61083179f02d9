#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hgb/graph.hpp"
#include "hgb/rng.hpp"

namespace hgb {

/// Node-induced subgraph with hyperedge masking.
///
/// `graph` is expressed in local indices: local node i is original node
/// node_ids[i]. Hyperedges that touch at least one sampled node are kept with
/// their non-sampled members removed; `hyperedge_ids` gives the original
/// index of each kept hyperedge.
struct SampledSubgraph {
  static constexpr NodeId npos = std::numeric_limits<NodeId>::max();

  std::vector<NodeId> node_ids;
  /// Original index -> local index, npos for nodes outside the sample.
  std::vector<NodeId> index_map;
  std::vector<std::size_t> hyperedge_ids;
  HybridGraph graph;

  std::optional<NodeId> local_index(NodeId original) const {
    const NodeId local = index_map.at(original);
    return local == npos ? std::nullopt : std::optional<NodeId>(local);
  }
};

/// Induced subgraph on `node_set` (duplicates allowed, order irrelevant).
/// Parents outside the sample become self-parents.
SampledSubgraph induce(const HybridGraph& g, std::span<const NodeId> node_set);

/// Weighted sampling without replacement: successive draws, each with
/// probability proportional to the weight among the items still available.
/// Returns item indices in draw order. Zero-weight items are never drawn.
std::vector<std::size_t> weighted_draw_without_replacement(std::span<const double> weights,
                                                           std::size_t count, Rng& rng);

/// GraphSAINT-style node sampler: `budget` distinct nodes, weight (deg+1)^2.
SampledSubgraph sample_node(const HybridGraph& g, std::size_t budget, Rng& rng);
/// Edge sampler: `budget_edges` distinct edges, weight 1/deg(u) + 1/deg(v);
/// the node set is the union of their endpoints.
SampledSubgraph sample_edge(const HybridGraph& g, std::size_t budget_edges, Rng& rng);
/// Random-walk sampler: `num_roots` uniform roots, each walking
/// `walk_length` uniform steps over simple edges; stops early at isolated
/// nodes.
SampledSubgraph sample_rw(const HybridGraph& g, std::size_t num_roots, std::size_t walk_length,
                          Rng& rng);
/// Uniform node subset of size `budget`.
SampledSubgraph sample_random_node(const HybridGraph& g, std::size_t budget, Rng& rng);
/// Uniform hyperedge subset of size `budget_hyperedges`; node set is the
/// union of their members.
SampledSubgraph sample_random_hyperedge(const HybridGraph& g, std::size_t budget_hyperedges,
                                        Rng& rng);

enum class SamplerKind { node, edge, random_walk, random_node, random_hyperedge };

SamplerKind parse_sampler_kind(std::string_view name);
std::string_view to_string(SamplerKind kind);

/// Sampler configuration. `budget` counts nodes (node, random_node), edges
/// (edge), roots (random_walk) or hyperedges (random_hyperedge).
struct SamplerSpec {
  SamplerKind kind = SamplerKind::node;
  std::size_t budget = 1;
  std::size_t walk_length = 2;
};

SampledSubgraph draw(const HybridGraph& g, const SamplerSpec& spec, Rng& rng);

}  // namespace hgb
