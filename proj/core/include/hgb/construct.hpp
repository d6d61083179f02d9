#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hgb/graph.hpp"

namespace hgb {

/// Location of a genomic element: chromosome name and base-pair offset.
struct GenomicPosition {
  std::string chromosome;
  std::int64_t offset = 0;

  bool operator==(const GenomicPosition&) const = default;
};

/// Sorts members of every hyperedge and the list itself lexicographically.
void canonicalize(std::vector<Hyperedge>& hyperedges);

/// Maximal cliques of the simple graph with at least `min_size` members.
///
/// Bron-Kerbosch with Tomita pivoting, outer loop in degeneracy order.
/// The result is canonical (see canonicalize), independent of edge order.
std::vector<Hyperedge> cliques_to_hyperedges(std::span<const Edge> edges,
                                             std::size_t num_nodes,
                                             std::size_t min_size = 3);

/// One hyperedge per anchor node: every node on the anchor's chromosome whose
/// offset lies within `threshold_bp` of the anchor. Identical member sets are
/// merged; singletons are kept. Canonical order.
std::vector<Hyperedge> interval_hyperedges(std::span<const GenomicPosition> positions,
                                           std::int64_t threshold_bp = 200'000);

enum class DistanceMetric { euclidean, cosine };

DistanceMetric parse_metric(std::string_view name);
std::string_view to_string(DistanceMetric metric);

/// One hyperedge per node v: {u : dist(x_u, x_v) <= tau}. Hyperedge k belongs
/// to node k, so the count always equals the number of rows. Cosine distance
/// is 1 - cos; a zero vector has cosine similarity 0 with everything else.
std::vector<Hyperedge> ball_hyperedges(const Matrix& embeddings, double tau,
                                       DistanceMetric metric = DistanceMetric::euclidean);

}  // namespace hgb
