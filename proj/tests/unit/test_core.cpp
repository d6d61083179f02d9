#include <doctest.h>

#include <numeric>

#include "fixtures.hpp"
#include "hgb/error.hpp"
#include "hgb/graph.hpp"
#include "hgb/matrices.hpp"
#include "hgb/rng.hpp"

using namespace hgb;

namespace {

HybridGraph triangle() { return HybridGraph::from_structure(3, {{0, 1}, {1, 2}, {0, 2}}); }

bool has_message(const ValidationReport& r, std::string_view text) {
  for (const auto& v : r.errors)
    if (v.message.find(text) != std::string::npos) return true;
  return false;
}

std::vector<NodeId> random_permutation(Rng& rng, std::size_t n) {
  std::vector<NodeId> p(n);
  std::iota(p.begin(), p.end(), NodeId{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.index(i)]);
  return p;
}

}  // namespace

TEST_CASE("rng is reproducible and mix_seed separates streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CHECK(mix_seed(1, 0) != mix_seed(1, 1));
  CHECK(mix_seed(1, 0) == mix_seed(1, 0));
  Rng r(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform_open();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    CHECK(r.index(5) < 5);
  }
}

TEST_CASE("validate: documented examples") {
  SUBCASE("empty hyperedge") {
    HybridGraph g = HybridGraph::from_structure(3, {}, {{0, 1}, {}});
    const auto r = validate(g);
    CHECK_FALSE(r.ok());
    CHECK(has_message(r, "empty hyperedge at index 1"));
  }
  SUBCASE("parent 2-cycle") {
    HybridGraph g = HybridGraph::from_structure(2, {});
    g.parent = {1, 0};
    const auto r = validate(g);
    CHECK_FALSE(r.ok());
    CHECK(has_message(r, "parent cycle"));
  }
  SUBCASE("triangle is valid") {
    const auto r = validate(triangle());
    CHECK(r.ok());
    CHECK(r.errors.empty());
  }
}

TEST_CASE("validate: every invariant reports its index") {
  HybridGraph g = triangle();
  SUBCASE("self loop") {
    g.simple_edges.push_back({2, 2});
    CHECK_FALSE(validate(g).ok());
  }
  SUBCASE("duplicate edge in either orientation") {
    g.simple_edges.push_back({1, 0});
    const auto r = validate(g);
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].index == 3);
  }
  SUBCASE("edge out of range") {
    g.simple_edges.push_back({0, 7});
    CHECK_FALSE(validate(g).ok());
  }
  SUBCASE("duplicate member") {
    g.hyperedges.push_back({0, 0, 1});
    g.hyperedge_weights.push_back(1.0);
    CHECK_FALSE(validate(g).ok());
  }
  SUBCASE("non-positive weight") {
    g.hyperedges.push_back({0, 1, 2});
    g.hyperedge_weights.push_back(0.0);
    CHECK_FALSE(validate(g).ok());
  }
  SUBCASE("feature rows") {
    g.node_features = Matrix::Zero(2, 1);
    CHECK_FALSE(validate(g).ok());
  }
  SUBCASE("label range") {
    g.task = Classification{2};
    g.labels = ClassLabels{0, 1, 2};
    CHECK_FALSE(validate(g).ok());
  }
  SUBCASE("duplicate hyperedges are only a warning") {
    g.hyperedges = {{0, 1, 2}, {0, 1, 2}};
    g.hyperedge_weights = {1.0, 1.0};
    const auto r = validate(g);
    CHECK(r.ok());
    CHECK(r.warnings.size() == 1);
  }
  SUBCASE("longer cycle") {
    g.parent = {1, 2, 0};
    CHECK_FALSE(validate(g).ok());
    CHECK_THROWS_AS(require_valid(g, "test"), ContractError);
  }
}

TEST_CASE("classify: documented examples") {
  CHECK(classify(HybridGraph::from_structure(3, {{0, 1}, {1, 2}})) == GraphKind::Simple);
  CHECK(classify(HybridGraph::from_structure(3, {}, {{0, 1, 2}})) == GraphKind::Hypergraph);
  HybridGraph h = HybridGraph::from_structure(3, {{0, 2}, {1, 2}});
  h.parent = {2, 2, 2};
  CHECK(classify(h) == GraphKind::Hierarchical);
}

TEST_CASE("classify: remaining cases") {
  SUBCASE("size-2 hyperedges count as simple edges") {
    CHECK(classify(HybridGraph::from_structure(3, {}, {{0, 1}})) == GraphKind::Simple);
  }
  SUBCASE("hierarchy without a link to the level above") {
    HybridGraph g = HybridGraph::from_structure(3, {{0, 1}});
    g.parent = {2, 2, 2};
    CHECK(classify(g) == GraphKind::GeneralHybrid);
  }
  SUBCASE("hierarchy plus a large hyperedge") {
    HybridGraph g = HybridGraph::from_structure(3, {{0, 2}, {1, 2}}, {{0, 1, 2}});
    g.parent = {2, 2, 2};
    CHECK(classify(g) == GraphKind::GeneralHybrid);
  }
  SUBCASE("invalid graph is a contract violation") {
    HybridGraph g = HybridGraph::from_structure(2, {});
    g.parent = {1, 0};
    CHECK_THROWS_AS(classify(g), ContractError);
  }
}

TEST_CASE("transformations: documented examples") {
  const HybridGraph g = HybridGraph::from_structure(3, {{0, 1}}, {{0, 1, 2}});
  const HybridGraph s = to_simple(g);
  CHECK(s.simple_edges == std::vector<Edge>{{0, 1}});
  CHECK(s.hyperedges.empty());

  const HybridGraph already = triangle();
  CHECK(to_simple(already) == already);

  const HybridGraph h = to_two_level_hierarchy(HybridGraph::from_structure(3, {}, {{0, 1, 2}}));
  CHECK(h.num_nodes == 4);
  CHECK(h.parent == std::vector<NodeId>{3, 3, 3, 3});
  CHECK(h.simple_edges == std::vector<Edge>{{0, 3}, {1, 3}, {2, 3}});
  CHECK(validate(h).ok());
}

TEST_CASE("to_two_level_hierarchy picks the lowest hyperedge and averages features") {
  HybridGraph g = HybridGraph::from_structure(4, {}, {{1, 2, 3}, {0, 1}});
  g.node_features = Matrix(4, 1);
  g.node_features << 0, 1, 2, 6;
  g.task = Classification{3};
  g.labels = ClassLabels{0, 2, 1, 2};
  const HybridGraph h = to_two_level_hierarchy(g);
  CHECK(h.parent[1] == 4);
  CHECK(h.parent[0] == 5);
  CHECK(h.node_features(4, 0) == doctest::Approx(3.0));
  CHECK(h.node_features(5, 0) == doctest::Approx(0.5));
  CHECK(std::get<ClassLabels>(h.labels)[4] == 2);
  CHECK(std::get<ClassLabels>(h.labels)[5] == 0);
}

TEST_CASE("properties over random graphs") {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const HybridGraph g = testing::random_hybrid_graph(rng);
    REQUIRE(validate(g).ok());

    const HybridGraph s = to_simple(g);
    bool has_pair = !s.simple_edges.empty() || !s.hyperedges.empty();
    if (has_pair) CHECK(classify(s) == GraphKind::Simple);

    const GraphKind hk = classify(to_hypergraph(g));
    CHECK((hk == GraphKind::Simple || hk == GraphKind::Hypergraph));

    const HybridGraph t = to_two_level_hierarchy(g);
    CHECK(validate(t).ok());
    CHECK_NOTHROW(node_levels(t));

    const auto perm = random_permutation(rng, g.num_nodes);
    const HybridGraph p = permute_nodes(g, perm);
    CHECK(validate(p).ok() == validate(g).ok());
    CHECK(classify(p) == classify(g));
  }
}

TEST_CASE("matrix forms") {
  HybridGraph g = HybridGraph::from_structure(3, {{0, 1}}, {{0, 1, 2}, {1, 2}});
  g.hyperedge_weights = {2.0, 0.5};
  g.parent = {2, 2, 2};
  const Matrix h = Matrix(incidence_matrix(g));
  Matrix expected_h(3, 2);
  expected_h << 1, 0, 1, 1, 1, 1;
  CHECK(h == expected_h);
  const Matrix a = Matrix(adjacency_matrix(g));
  CHECK(a(0, 1) == 1.0);
  CHECK(a(1, 0) == 1.0);
  CHECK(a.sum() == 2.0);
  const Matrix r = Matrix(parent_matrix(g));
  CHECK(r(0, 2) == 1.0);
  CHECK(r(2, 2) == 1.0);
  CHECK(r.sum() == 3.0);
  CHECK(hyperedge_weight_vector(g)(0) == 2.0);
  CHECK(Matrix(parent_matrix(triangle())) == Matrix::Identity(3, 3));
}

TEST_CASE("adjacency lists are sorted") {
  const Adjacency adj(4, std::vector<Edge>{{3, 0}, {1, 0}, {2, 0}});
  const auto n0 = adj.neighbors(0);
  CHECK(std::vector<NodeId>(n0.begin(), n0.end()) == std::vector<NodeId>{1, 2, 3});
  CHECK(adj.connected(0, 2));
  CHECK_FALSE(adj.connected(1, 2));
}
