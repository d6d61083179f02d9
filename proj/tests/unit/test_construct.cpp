#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "hgb/construct.hpp"
#include "hgb/error.hpp"

using namespace hgb;

TEST_CASE("cliques: documented examples") {
  CHECK(cliques_to_hyperedges(std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, 4) ==
        std::vector<Hyperedge>{{0, 1, 2, 3}});
  CHECK(cliques_to_hyperedges(std::vector<Edge>{{0, 1}, {1, 2}}, 3).empty());
  const std::vector<Edge> tri_pendant{{0, 1}, {1, 2}, {2, 0}, {2, 3}};
  CHECK(cliques_to_hyperedges(tri_pendant, 4) == std::vector<Hyperedge>{{0, 1, 2}});
  CHECK(cliques_to_hyperedges(tri_pendant, 4) ==
        testing::brute_force_maximal_cliques(4, tri_pendant, 3));
}

TEST_CASE("cliques: min_size and independence from edge order") {
  const std::vector<Edge> edges{{0, 1}, {1, 2}, {2, 0}, {2, 3}, {4, 5}};
  CHECK(cliques_to_hyperedges(edges, 7, 2) ==
        std::vector<Hyperedge>{{0, 1, 2}, {2, 3}, {4, 5}});
  std::vector<Edge> shuffled{{5, 4}, {3, 2}, {0, 2}, {2, 1}, {1, 0}, {1, 0}};
  CHECK(cliques_to_hyperedges(shuffled, 7, 2) == cliques_to_hyperedges(edges, 7, 2));
  CHECK(cliques_to_hyperedges(edges, 7, 1).size() == 4);  // isolated node 6 joins as {6}
}

TEST_CASE("cliques agree with the all-subsets oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 1 + rng.index(11);
    const auto edges = testing::random_edges(rng, n, rng.uniform());
    const std::size_t min_size = 1 + rng.index(4);
    const auto got = cliques_to_hyperedges(edges, n, min_size);
    CHECK(got == testing::brute_force_maximal_cliques(n, edges, min_size));

    const Adjacency adj(n, edges);
    for (std::size_t i = 0; i < got.size(); ++i) {
      for (std::size_t a = 0; a < got[i].size(); ++a)
        for (std::size_t b = a + 1; b < got[i].size(); ++b) CHECK(adj.connected(got[i][a], got[i][b]));
      for (std::size_t j = 0; j < got.size(); ++j)
        if (i != j)
          CHECK_FALSE(std::includes(got[j].begin(), got[j].end(), got[i].begin(), got[i].end()));
    }
  }
}

TEST_CASE("interval: documented examples") {
  using P = GenomicPosition;
  CHECK(interval_hyperedges(std::vector<P>{{"chr1", 0}, {"chr1", 150000}, {"chr1", 400000}},
                            200000) == std::vector<Hyperedge>{{0, 1}, {2}});
  CHECK(interval_hyperedges(std::vector<P>{{"chr1", 0}, {"chr2", 0}}) ==
        std::vector<Hyperedge>{{0}, {1}});
  CHECK(interval_hyperedges(std::vector<P>{{"chrX", 42}}) == std::vector<Hyperedge>{{0}});
}

TEST_CASE("interval: members stay on one chromosome within twice the threshold") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<GenomicPosition> pos;
    const std::size_t n = 1 + rng.index(40);
    for (std::size_t v = 0; v < n; ++v)
      pos.push_back({"chr" + std::to_string(rng.index(3)), static_cast<std::int64_t>(rng.index(2000))});
    const std::int64_t threshold = static_cast<std::int64_t>(rng.index(300));
    const auto hes = interval_hyperedges(pos, threshold);
    std::set<NodeId> covered;
    for (const auto& he : hes) {
      std::int64_t lo = pos[he.front()].offset, hi = lo;
      for (NodeId v : he) {
        CHECK(pos[v].chromosome == pos[he.front()].chromosome);
        lo = std::min(lo, pos[v].offset);
        hi = std::max(hi, pos[v].offset);
        covered.insert(v);
      }
      CHECK(hi - lo <= 2 * threshold);
    }
    CHECK(covered.size() == n);
    CHECK(std::set<Hyperedge>(hes.begin(), hes.end()).size() == hes.size());
  }
}

TEST_CASE("ball: documented examples") {
  Matrix x(3, 1);
  x << 0, 1, 10;
  CHECK(ball_hyperedges(x, 2.0) == std::vector<Hyperedge>{{0, 1}, {0, 1}, {2}});
  const auto singles = ball_hyperedges(x, 0.5);
  CHECK(singles == std::vector<Hyperedge>{{0}, {1}, {2}});
  CHECK_THROWS_AS(ball_hyperedges(x, 0.0), ContractError);
  x(1, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ball_hyperedges(x, 1.0), ContractError);
}

TEST_CASE("ball: cosine metric and self membership") {
  Matrix x(4, 2);
  x << 1, 0, 2, 0, 0, 1, 0, 0;
  const auto hes = ball_hyperedges(x, 0.1, DistanceMetric::cosine);
  CHECK(hes[0] == Hyperedge{0, 1});
  CHECK(hes[2] == Hyperedge{2});
  CHECK(hes[3] == Hyperedge{3});
  Rng rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix e = testing::random_matrix(rng, 1 + static_cast<Eigen::Index>(rng.index(20)), 3);
    const auto balls = ball_hyperedges(e, 0.2 + rng.uniform(), DistanceMetric::euclidean);
    CHECK(balls.size() == static_cast<std::size_t>(e.rows()));
    for (std::size_t v = 0; v < balls.size(); ++v)
      CHECK(std::find(balls[v].begin(), balls[v].end(), v) != balls[v].end());
  }
  CHECK(parse_metric("cosine") == DistanceMetric::cosine);
  CHECK_THROWS(parse_metric("manhattan"));
}
