#include <doctest.h>

#include <numeric>

#include "fixtures.hpp"
#include "hgb/error.hpp"
#include "hgb/stats.hpp"

using namespace hgb;

namespace {

/// Mean avg_node_degree over every node subset of size k, each equally likely.
double enumerate_random_node_degree(const HybridGraph& g, std::size_t k) {
  const std::size_t n = g.num_nodes;
  double total = 0.0;
  std::size_t count = 0;
  for (std::uint32_t set = 0; set < (1u << n); ++set) {
    if (static_cast<std::size_t>(__builtin_popcount(set)) != k) continue;
    std::vector<NodeId> nodes;
    for (NodeId v = 0; v < n; ++v)
      if (set >> v & 1u) nodes.push_back(v);
    total += compute_stats(induce(g, nodes).graph).avg_node_degree;
    ++count;
  }
  return total / static_cast<double>(count);
}

}  // namespace

TEST_CASE("compute_stats: documented examples") {
  SUBCASE("published degree ratio") {
    // 37,700 nodes and 289,003 undirected edges, i.e. 578,006 arcs.
    const NodeId n = 37700;
    std::vector<Edge> edges;
    for (NodeId k = 1; k <= 8; ++k)
      for (NodeId u = 0; u < n && edges.size() < 289003; ++u) edges.push_back({u, (u + k) % n});
    const GraphStats s = compute_stats(HybridGraph::from_structure(n, std::move(edges)),
                                       EdgeCounting::arcs);
    CHECK(s.num_edges == 578006);
    CHECK(std::abs(s.avg_node_degree - 30.66) <= 0.01);
  }
  SUBCASE("triangle") {
    const GraphStats s = compute_stats(HybridGraph::from_structure(3, {{0, 1}, {1, 2}, {0, 2}}));
    CHECK(s.avg_node_degree == doctest::Approx(2.0));
    CHECK(s.avg_clustering_coef == doctest::Approx(1.0));
  }
  SUBCASE("hyperedge degree") {
    const GraphStats s = compute_stats(HybridGraph::from_structure(5, {}, {{0, 1, 2}, {3, 4}}));
    CHECK(s.avg_hyperedge_degree == doctest::Approx(2.5));
    CHECK(s.num_hyperedges == 2);
  }
}

TEST_CASE("compute_stats: arc counting doubles edges and degrees") {
  const HybridGraph g = HybridGraph::from_structure(4, {{0, 1}, {1, 2}, {2, 3}});
  const GraphStats u = compute_stats(g);
  const GraphStats a = compute_stats(g, EdgeCounting::arcs);
  CHECK(u.num_edges == 3);
  CHECK(a.num_edges == 6);
  CHECK(a.avg_node_degree == doctest::Approx(2.0 * u.avg_node_degree));
  CHECK(a.avg_clustering_coef == u.avg_clustering_coef);
}

TEST_CASE("clustering: star, path and a hand-checked graph") {
  // Triangle 0-1-2 plus pendant 2-3: c = (1, 1, 1/3, 0).
  const Adjacency adj(4, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  const auto c = local_clustering(adj);
  CHECK(c[0] == doctest::Approx(1.0));
  CHECK(c[1] == doctest::Approx(1.0));
  CHECK(c[2] == doctest::Approx(1.0 / 3.0));
  CHECK(c[3] == 0.0);
  CHECK(average_clustering(adj) == doctest::Approx((2.0 + 1.0 / 3.0) / 4.0));
  CHECK(average_clustering(Adjacency(4, std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}})) == 0.0);
}

TEST_CASE("stats properties over random graphs") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const HybridGraph g = testing::random_hybrid_graph(rng);
    const GraphStats s = compute_stats(g);
    CHECK(s.avg_node_degree ==
          doctest::Approx(2.0 * static_cast<double>(s.num_edges) / static_cast<double>(s.num_nodes)));
    CHECK(s.avg_clustering_coef >= 0.0);
    CHECK(s.avg_clustering_coef <= 1.0);

    // Brute-force clustering oracle.
    const Adjacency adj(g.num_nodes, g.simple_edges);
    double sum = 0.0;
    for (NodeId v = 0; v < g.num_nodes; ++v) {
      const auto nb = adj.neighbors(v);
      if (nb.size() < 2) continue;
      std::size_t links = 0;
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) links += adj.connected(nb[i], nb[j]);
      sum += 2.0 * static_cast<double>(links) /
             (static_cast<double>(nb.size()) * static_cast<double>(nb.size() - 1));
    }
    CHECK(s.avg_clustering_coef == doctest::Approx(sum / static_cast<double>(g.num_nodes)));

    std::vector<NodeId> perm(g.num_nodes);
    std::iota(perm.begin(), perm.end(), NodeId{0});
    for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.index(i)]);
    CHECK(compute_stats(permute_nodes(g, perm)).avg_clustering_coef ==
          doctest::Approx(s.avg_clustering_coef));
  }
}

TEST_CASE("sampler_report: documented examples") {
  Rng rng(3);
  const HybridGraph g = testing::random_hybrid_graph(rng, {.min_nodes = 6, .max_nodes = 10});
  SUBCASE("full-budget node sampler reproduces the graph") {
    const SamplerReport r = sampler_report(g, {SamplerKind::node, g.num_nodes, 2}, 1, 11);
    const GraphStats s = compute_stats(g);
    CHECK(r.num_nodes == static_cast<double>(s.num_nodes));
    CHECK(r.num_edges == static_cast<double>(s.num_edges));
    CHECK(r.avg_node_degree == doctest::Approx(s.avg_node_degree));
    CHECK(r.avg_hyperedge_degree == doctest::Approx(s.avg_hyperedge_degree));
  }
  SUBCASE("deterministic for a fixed seed") {
    const SamplerSpec spec{SamplerKind::random_walk, 2, 3};
    const SamplerReport a = sampler_report(g, spec, 25, 99);
    const SamplerReport b = sampler_report(g, spec, 25, 99);
    CHECK(a.num_nodes == b.num_nodes);
    CHECK(a.avg_node_degree == b.avg_node_degree);
    CHECK(a.avg_clustering_coef == b.avg_clustering_coef);
  }
  SUBCASE("random node pairs") {
    const SamplerSpec spec{SamplerKind::random_node, 2, 2};
    // Every pair of triangle nodes is adjacent, so each sample has degree 1.
    const HybridGraph tri = HybridGraph::from_structure(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(enumerate_random_node_degree(tri, 2) == doctest::Approx(1.0));
    CHECK(sampler_report(tri, spec, 2000, 5).avg_node_degree == doctest::Approx(1.0));
    // On the path 0-1-2 two of the three pairs keep their edge.
    const HybridGraph path = HybridGraph::from_structure(3, {{0, 1}, {1, 2}});
    const double exact = enumerate_random_node_degree(path, 2);
    CHECK(exact == doctest::Approx(2.0 / 3.0));
    CHECK(std::abs(sampler_report(path, spec, 20000, 5).avg_node_degree - exact) <= 0.02);
  }
  SUBCASE("needs at least one trial") {
    CHECK_THROWS_AS(sampler_report(g, {}, 0, 1), ContractError);
  }
}
