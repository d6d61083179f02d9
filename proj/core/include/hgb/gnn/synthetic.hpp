#pragma once

#include <cstddef>
#include <cstdint>

#include "hgb/io.hpp"

namespace hgb::gnn {

struct SyntheticConfig {
  std::size_t num_nodes = 200;
  std::size_t num_classes = 2;
  std::size_t feature_dim = 8;
  /// Standard deviation of the Gaussian noise added to every feature.
  double noise = 0.1;
  double avg_degree = 4.0;
  /// Share of edges joining nodes of the same class.
  double intra_fraction = 0.9;
  /// Target size of the class-pure hyperedges.
  std::size_t hyperedge_size = 5;
  bool regression = false;
  std::uint64_t seed = 0;
};

/// Linearly separable node-classification dataset: feature j of node v is
/// 1 when j % num_classes equals its label, 0 otherwise, plus noise. Random
/// edges prefer same-class endpoints; hyperedges partition each class into
/// groups of about hyperedge_size, so every node has one. With `regression`
/// the labels become real targets equal to the class index.
Dataset make_separable(const SyntheticConfig& config);

}  // namespace hgb::gnn
