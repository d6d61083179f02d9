#pragma once

#include "hgb/gnn/synthetic.hpp"

namespace hgb::bench {

inline Dataset community_graph(std::size_t n, double degree) {
  gnn::SyntheticConfig c;
  c.num_nodes = n;
  c.avg_degree = degree;
  c.num_classes = 4;
  c.feature_dim = 16;
  c.seed = 1;
  return gnn::make_separable(c);
}

}  // namespace hgb::bench
