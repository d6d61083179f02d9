#include <doctest.h>

#include <filesystem>
#include <set>

#include "fixtures.hpp"
#include "hgb/error.hpp"
#include "hgb/io.hpp"

using namespace hgb;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hgb_test_io_" + name);
}

const char* kMinimal = R"({
  "num_nodes": 2, "task": "classification", "num_classes": 2,
  "node_features": [[0.5], [1.5]],
  "edges": [[0, 1]],
  "labels": [0, 1]
})";

}  // namespace

TEST_CASE("load: documented examples") {
  SUBCASE("minimal file") {
    const HybridGraph g = parse_dataset(kMinimal).graph;
    CHECK(g.num_nodes == 2);
    CHECK(g.simple_edges.size() == 1);
    CHECK(g.parent == std::vector<NodeId>{0, 1});
    CHECK(g.num_classes() == 2);
  }
  SUBCASE("hyperedges without weights default to 1") {
    const HybridGraph g = parse_dataset(R"({
      "num_nodes": 3, "task": "regression", "node_features": [[0], [0], [0]],
      "edges": [], "hyperedges": [[0, 1, 2]], "labels": [0.5, 1, 2]})")
                              .graph;
    CHECK(g.hyperedge_weights == std::vector<double>{1.0});
  }
  SUBCASE("index out of range") {
    try {
      parse_dataset(R"({"num_nodes": 3, "task": "regression",
        "node_features": [[0], [0], [0]], "edges": [[0, 5]], "labels": [0, 0, 0]})");
      FAIL("expected a schema error");
    } catch (const SchemaError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("index 5 out of range") != std::string::npos);
      CHECK(msg.find("edges[0][1]") != std::string::npos);
    }
  }
}

TEST_CASE("load: error kinds name the field or line") {
  SUBCASE("malformed JSON reports the line") {
    try {
      parse_dataset("{\n  \"num_nodes\": 2,\n  oops\n}");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("missing required field") {
    try {
      parse_dataset(R"({"num_nodes": 1, "task": "regression", "edges": [], "labels": [0]})");
      FAIL("expected a schema error");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("node_features") != std::string::npos);
    }
  }
  SUBCASE("invariant breach") {
    CHECK_THROWS_AS(parse_dataset(R"({"num_nodes": 2, "task": "regression",
      "node_features": [[0], [0]], "edges": [[0, 0]], "labels": [0, 0]})"),
                    ValidationError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load(temp_file("does_not_exist.json")), IoError);
  }
}

TEST_CASE("save/load round trip: documented examples") {
  const auto path = temp_file("roundtrip.json");
  SUBCASE("triangle") {
    HybridGraph g = HybridGraph::from_structure(3, {{0, 1}, {1, 2}, {0, 2}});
    save(g, path);
    CHECK(load(path) == g);
  }
  SUBCASE("weighted hyperedges") {
    HybridGraph g = HybridGraph::from_structure(4, {{0, 1}}, {{0, 1, 2}, {2, 3}});
    g.hyperedge_weights = {0.25, 3.5};
    save(g, path);
    const HybridGraph back = load(path);
    CHECK(back == g);
    CHECK(back.hyperedge_weights == std::vector<double>{0.25, 3.5});
  }
  SUBCASE("features keep full precision") {
    Rng rng(9);
    HybridGraph g = HybridGraph::from_structure(5, {{0, 4}});
    g.node_features = testing::random_matrix(rng, 5, 4, 1e-3);
    g.node_features(2, 1) = 1.0 / 3.0;
    g.node_features(3, 3) = -6.02214076e23;
    save(g, path);
    CHECK((load(path).node_features - g.node_features).cwiseAbs().maxCoeff() == 0.0);
  }
  std::filesystem::remove(path);
}

TEST_CASE("round trip over generated graphs") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    testing::RandomGraphOptions o;
    o.max_nodes = 15;
    Dataset d;
    d.name = "g" + std::to_string(trial);
    d.graph = testing::random_hybrid_graph(rng, o);
    if (trial % 3 == 0) {
      d.graph.task = Regression{};
      RealLabels y(d.graph.num_nodes);
      for (double& v : y) v = rng.normal();
      d.graph.labels = y;
    }
    if (trial % 4 == 0) {
      std::vector<GenomicPosition> pos;
      for (std::size_t v = 0; v < d.graph.num_nodes; ++v)
        pos.push_back({"chr" + std::to_string(rng.index(3)), static_cast<std::int64_t>(rng.index(1000000))});
      d.positions = pos;
      d.embeddings = testing::random_matrix(rng, static_cast<Eigen::Index>(d.graph.num_nodes), 2);
    }
    if (trial % 5 == 0 && !d.graph.hyperedges.empty())
      d.graph.hyperedge_features =
          testing::random_matrix(rng, static_cast<Eigen::Index>(d.graph.hyperedges.size()), 2);
    const Dataset back = parse_dataset(serialize_dataset(d));
    CHECK(back.graph == d.graph);
    CHECK(back.name == d.name);
    CHECK(back.positions == d.positions);
    CHECK(back.embeddings.has_value() == d.embeddings.has_value());
    if (d.embeddings) CHECK(*back.embeddings == *d.embeddings);
  }
}

TEST_CASE("split: documented examples") {
  const SplitMasks ten = split(10, 3);
  CHECK(ten.train.size() == 6);
  CHECK(ten.val.size() == 2);
  CHECK(ten.test.size() == 2);

  const SplitMasks seven = split(7, 1);
  CHECK(seven.train.size() == 4);
  CHECK(seven.val.size() == 1);
  CHECK(seven.test.size() == 2);

  const SplitMasks again = split(10, 3);
  CHECK(again.train == ten.train);
  CHECK(again.val == ten.val);
  CHECK(again.test == ten.test);

  CHECK_THROWS_AS(split(4, 0), ContractError);
}

TEST_CASE("split: disjoint, exhaustive, near the 6:2:2 ratio") {
  for (std::size_t n = 5; n <= 120; ++n) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SplitMasks m = split(n, seed);
      std::set<NodeId> all;
      for (const auto* part : {&m.train, &m.val, &m.test}) {
        CHECK(std::is_sorted(part->begin(), part->end()));
        all.insert(part->begin(), part->end());
      }
      CHECK(all.size() == n);
      CHECK(m.train.size() + m.val.size() + m.test.size() == n);
      const double nn = static_cast<double>(n);
      CHECK(std::abs(static_cast<double>(m.train.size()) - 0.6 * nn) < 1.0);
      CHECK(std::abs(static_cast<double>(m.val.size()) - 0.2 * nn) < 1.0);
      // floor/floor/remainder can leave the test part more than 1 above its
      // share (n = 9: test 3 against 1.8).
      CHECK(std::abs(static_cast<double>(m.test.size()) - 0.2 * nn) < 2.0);
    }
  }
}

TEST_CASE("array-layout adapter") {
  const Dataset d = parse_pyg_layout(R"({
    "x": [[1, 0], [0, 1], [1, 1], [0, 0]],
    "y": [0, 1, 1, 0],
    "edge_index": [[0, 1, 1, 2, 3], [1, 0, 2, 1, 3]],
    "hyperedge_index": [[0, 1, 2, 2, 3], [0, 0, 0, 1, 1]]
  })");
  const HybridGraph& g = d.graph;
  CHECK(g.num_nodes == 4);
  CHECK(g.simple_edges == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(g.hyperedges == std::vector<Hyperedge>{{0, 1, 2}, {2, 3}});
  CHECK(g.num_classes() == 2);
}
