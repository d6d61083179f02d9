#include "hgb/stats.hpp"

#include "hgb/error.hpp"
#include "hgb/rng.hpp"

namespace hgb {

std::vector<double> local_clustering(const Adjacency& adj) {
  const std::size_t n = adj.num_nodes();
  std::vector<std::size_t> triangles(n, 0);
  // Each triangle u < v < w is found once from its smallest vertex.
  std::vector<bool> mark(n, false);
  for (NodeId u = 0; u < n; ++u) {
    const auto nu = adj.neighbors(u);
    for (NodeId v : nu) mark[v] = true;
    for (NodeId v : nu) {
      if (v <= u) continue;
      for (NodeId w : adj.neighbors(v)) {
        if (w <= v || !mark[w]) continue;
        ++triangles[u];
        ++triangles[v];
        ++triangles[w];
      }
    }
    for (NodeId v : nu) mark[v] = false;
  }
  std::vector<double> coef(n, 0.0);
  for (NodeId v = 0; v < n; ++v) {
    const double d = static_cast<double>(adj.degree(v));
    if (d >= 2.0) coef[v] = 2.0 * static_cast<double>(triangles[v]) / (d * (d - 1.0));
  }
  return coef;
}

double average_clustering(const Adjacency& adj) {
  const auto coef = local_clustering(adj);
  if (coef.empty()) return 0.0;
  double sum = 0.0;
  for (double c : coef) sum += c;
  return sum / static_cast<double>(coef.size());
}

GraphStats compute_stats(const HybridGraph& g, EdgeCounting counting) {
  GraphStats s;
  s.num_nodes = g.num_nodes;
  s.num_edges = g.simple_edges.size() * (counting == EdgeCounting::arcs ? 2 : 1);
  s.num_hyperedges = g.hyperedges.size();
  if (s.num_nodes > 0)
    s.avg_node_degree = 2.0 * static_cast<double>(s.num_edges) / static_cast<double>(s.num_nodes);
  if (s.num_hyperedges > 0) {
    std::size_t members = 0;
    for (const Hyperedge& he : g.hyperedges) members += he.size();
    s.avg_hyperedge_degree =
        static_cast<double>(members) / static_cast<double>(s.num_hyperedges);
  }
  s.avg_clustering_coef = average_clustering(Adjacency(g.num_nodes, g.simple_edges));
  return s;
}

SamplerReport sampler_report(const HybridGraph& g, const SamplerSpec& sampler, std::size_t trials,
                             std::uint64_t seed) {
  if (trials < 1) throw ContractError("sampler_report: trials must be at least 1");
  SamplerReport r;
  r.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(mix_seed(seed, i));
    const SampledSubgraph sub = draw(g, sampler, rng);
    const GraphStats s = compute_stats(sub.graph);
    r.num_nodes += static_cast<double>(s.num_nodes);
    r.num_edges += static_cast<double>(s.num_edges);
    r.num_hyperedges += static_cast<double>(s.num_hyperedges);
    r.avg_node_degree += s.avg_node_degree;
    r.avg_hyperedge_degree += s.avg_hyperedge_degree;
    r.avg_clustering_coef += s.avg_clustering_coef;
  }
  const double t = static_cast<double>(trials);
  r.num_nodes /= t;
  r.num_edges /= t;
  r.num_hyperedges /= t;
  r.avg_node_degree /= t;
  r.avg_hyperedge_degree /= t;
  r.avg_clustering_coef /= t;
  return r;
}

}  // namespace hgb
