#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hgb/graph.hpp"
#include "hgb/sample.hpp"

namespace hgb {

struct GraphStats {
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::size_t num_hyperedges = 0;
  double avg_node_degree = 0.0;
  double avg_hyperedge_degree = 0.0;
  double avg_clustering_coef = 0.0;
};

/// How `num_edges` is counted. `arcs` counts each undirected edge once per
/// direction, the convention of edge_index arrays in the published dataset
/// files; their edge and degree columns use it.
enum class EdgeCounting { undirected, arcs };

/// Degrees and clustering use simple edges only. avg_node_degree is
/// 2 * num_edges / num_nodes; clustering averages the local coefficient over
/// all nodes, with degree < 2 nodes contributing 0.
GraphStats compute_stats(const HybridGraph& g, EdgeCounting counting = EdgeCounting::undirected);

/// Local clustering coefficient of every node.
std::vector<double> local_clustering(const Adjacency& adj);
double average_clustering(const Adjacency& adj);

/// Element-wise means of GraphStats over sampled subgraphs.
struct SamplerReport {
  std::size_t trials = 0;
  double num_nodes = 0.0;
  double num_edges = 0.0;
  double num_hyperedges = 0.0;
  double avg_node_degree = 0.0;
  double avg_hyperedge_degree = 0.0;
  double avg_clustering_coef = 0.0;
};

/// Runs the sampler `trials` times (trial i seeded with mix_seed(seed, i)) and
/// averages the statistics of the masked subgraphs in trial order.
SamplerReport sampler_report(const HybridGraph& g, const SamplerSpec& sampler, std::size_t trials,
                             std::uint64_t seed);

}  // namespace hgb
