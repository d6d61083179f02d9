#include "hgb/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hgb/error.hpp"
#include "hgb/rng.hpp"

namespace hgb {

using nlohmann::json;

namespace {

std::string line_col(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  const auto head = text.substr(0, byte);
  const auto line = std::count(head.begin(), head.end(), '\n') + 1;
  const auto last_nl = head.rfind('\n');
  const auto col = last_nl == std::string_view::npos ? byte : byte - last_nl - 1;
  return "line " + std::to_string(line) + ", column " + std::to_string(col + 1);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + line_col(text, e.byte) + ": " + e.what());
  }
}

[[noreturn]] void schema_fail(const std::string& field, const std::string& what) {
  throw SchemaError(field + ": " + what);
}

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) schema_fail(key, "missing required field");
  return *it;
}

std::int64_t as_integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) schema_fail(field, "expected an integer");
  return v.get<std::int64_t>();
}

double as_real(const json& v, const std::string& field) {
  if (!v.is_number()) schema_fail(field, "expected a number");
  return v.get<double>();
}

NodeId as_node(const json& v, std::size_t num_nodes, const std::string& field) {
  const std::int64_t idx = as_integer(v, field);
  if (idx < 0 || static_cast<std::uint64_t>(idx) >= num_nodes)
    schema_fail(field, "index " + std::to_string(idx) + " out of range (num_nodes " +
                           std::to_string(num_nodes) + ")");
  return static_cast<NodeId>(idx);
}

Matrix as_matrix(const json& v, const std::string& field, std::optional<std::size_t> rows) {
  if (!v.is_array()) schema_fail(field, "expected an array of rows");
  if (rows && v.size() != *rows)
    schema_fail(field, "expected " + std::to_string(*rows) + " rows, found " +
                           std::to_string(v.size()));
  const std::size_t cols = v.empty() ? 0 : v.front().size();
  Matrix m(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const json& row = v[i];
    if (!row.is_array() || row.size() != cols)
      schema_fail(field + "[" + std::to_string(i) + "]",
                  "expected a row of " + std::to_string(cols) + " numbers");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!row[j].is_number())
        schema_fail(field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                    "expected a number");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j].get<double>();
    }
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void check_valid(const HybridGraph& g) {
  const ValidationReport report = validate(g);
  if (report.ok()) return;
  const Violation& first = report.errors.front();
  std::string msg = first.field + ": " + first.message;
  if (report.errors.size() > 1)
    msg += " (and " + std::to_string(report.errors.size() - 1) + " more violations)";
  throw ValidationError(msg);
}

Labels parse_labels(const json& v, const Task& task, std::size_t num_nodes) {
  if (!v.is_array()) schema_fail("labels", "expected an array");
  if (v.size() != num_nodes)
    schema_fail("labels", "expected " + std::to_string(num_nodes) + " entries, found " +
                              std::to_string(v.size()));
  if (std::holds_alternative<Classification>(task)) {
    ClassLabels labels(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
      labels[i] = as_integer(v[i], "labels[" + std::to_string(i) + "]");
    return labels;
  }
  RealLabels labels(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    labels[i] = as_real(v[i], "labels[" + std::to_string(i) + "]");
  return labels;
}

}  // namespace

Dataset parse_dataset(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) schema_fail("<root>", "expected a JSON object");

  Dataset ds;
  if (auto it = doc.find("name"); it != doc.end() && it->is_string()) ds.name = *it;
  if (auto it = doc.find("feature_source"); it != doc.end() && it->is_string())
    ds.feature_source = *it;

  HybridGraph& g = ds.graph;
  const std::int64_t n = as_integer(require(doc, "num_nodes"), "num_nodes");
  if (n < 0) schema_fail("num_nodes", "must be non-negative");
  g.num_nodes = static_cast<std::size_t>(n);

  const std::string task = require(doc, "task").is_string()
                               ? require(doc, "task").get<std::string>()
                               : std::string{};
  if (task == "classification") {
    const std::int64_t c = as_integer(require(doc, "num_classes"), "num_classes");
    if (c < 1) schema_fail("num_classes", "must be at least 1");
    g.task = Classification{static_cast<std::size_t>(c)};
  } else if (task == "regression") {
    g.task = Regression{};
  } else {
    schema_fail("task", "expected \"classification\" or \"regression\"");
  }

  g.node_features = as_matrix(require(doc, "node_features"), "node_features", g.num_nodes);

  const json& edges = require(doc, "edges");
  if (!edges.is_array()) schema_fail("edges", "expected an array of pairs");
  g.simple_edges.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 2) schema_fail(field, "expected a pair");
    g.simple_edges.push_back({as_node(edges[i][0], g.num_nodes, field + "[0]"),
                              as_node(edges[i][1], g.num_nodes, field + "[1]")});
  }

  if (auto it = doc.find("hyperedges"); it != doc.end()) {
    if (!it->is_array()) schema_fail("hyperedges", "expected an array of index lists");
    g.hyperedges.reserve(it->size());
    for (std::size_t k = 0; k < it->size(); ++k) {
      const json& members = (*it)[k];
      const std::string field = "hyperedges[" + std::to_string(k) + "]";
      if (!members.is_array()) schema_fail(field, "expected an index list");
      Hyperedge he;
      he.reserve(members.size());
      for (std::size_t j = 0; j < members.size(); ++j)
        he.push_back(as_node(members[j], g.num_nodes, field + "[" + std::to_string(j) + "]"));
      g.hyperedges.push_back(std::move(he));
    }
  }

  if (auto it = doc.find("hyperedge_weights"); it != doc.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != g.hyperedges.size())
      schema_fail("hyperedge_weights",
                  "expected " + std::to_string(g.hyperedges.size()) + " numbers");
    for (std::size_t k = 0; k < it->size(); ++k)
      g.hyperedge_weights.push_back(
          as_real((*it)[k], "hyperedge_weights[" + std::to_string(k) + "]"));
  } else {
    g.hyperedge_weights.assign(g.hyperedges.size(), 1.0);
  }

  if (auto it = doc.find("hyperedge_features"); it != doc.end() && !it->is_null())
    g.hyperedge_features = as_matrix(*it, "hyperedge_features", g.hyperedges.size());

  if (auto it = doc.find("parent"); it != doc.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != g.num_nodes)
      schema_fail("parent", "expected " + std::to_string(g.num_nodes) + " node indices");
    g.parent.reserve(g.num_nodes);
    for (std::size_t v = 0; v < it->size(); ++v)
      g.parent.push_back(as_node((*it)[v], g.num_nodes, "parent[" + std::to_string(v) + "]"));
  } else {
    g.parent = identity_parent(g.num_nodes);
  }

  g.labels = parse_labels(require(doc, "labels"), g.task, g.num_nodes);

  if (auto it = doc.find("positions"); it != doc.end() && !it->is_null()) {
    if (!it->is_array() || it->size() != g.num_nodes)
      schema_fail("positions", "expected one [chromosome, offset] pair per node");
    std::vector<GenomicPosition> positions;
    positions.reserve(it->size());
    for (std::size_t v = 0; v < it->size(); ++v) {
      const json& p = (*it)[v];
      const std::string field = "positions[" + std::to_string(v) + "]";
      if (!p.is_array() || p.size() != 2 || !p[0].is_string())
        schema_fail(field, "expected [chromosome, offset]");
      positions.push_back({p[0].get<std::string>(), as_integer(p[1], field + "[1]")});
    }
    ds.positions = std::move(positions);
  }
  if (auto it = doc.find("embeddings"); it != doc.end() && !it->is_null())
    ds.embeddings = as_matrix(*it, "embeddings", g.num_nodes);

  check_valid(g);
  return ds;
}

std::string serialize_dataset(const Dataset& ds) {
  const HybridGraph& g = ds.graph;
  json doc;
  doc["name"] = ds.name;
  if (!ds.feature_source.empty()) doc["feature_source"] = ds.feature_source;
  doc["num_nodes"] = g.num_nodes;
  if (const auto* c = std::get_if<Classification>(&g.task)) {
    doc["task"] = "classification";
    doc["num_classes"] = c->num_classes;
  } else {
    doc["task"] = "regression";
  }
  doc["node_features"] = matrix_to_json(g.node_features);

  json edges = json::array();
  for (const Edge& e : g.simple_edges) edges.push_back({e.u, e.v});
  doc["edges"] = std::move(edges);
  doc["hyperedges"] = g.hyperedges;
  doc["hyperedge_weights"] = g.hyperedge_weights;
  if (g.hyperedge_features) doc["hyperedge_features"] = matrix_to_json(*g.hyperedge_features);
  doc["parent"] = g.parent;
  std::visit([&](const auto& labels) { doc["labels"] = labels; }, g.labels);

  if (ds.positions) {
    json positions = json::array();
    for (const auto& p : *ds.positions) positions.push_back({p.chromosome, p.offset});
    doc["positions"] = std::move(positions);
  }
  if (ds.embeddings) doc["embeddings"] = matrix_to_json(*ds.embeddings);
  return doc.dump();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

Dataset load_dataset(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_dataset(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void save_dataset(const Dataset& dataset, const std::filesystem::path& path) {
  require_valid(dataset.graph, "save");
  write_text_file(path, serialize_dataset(dataset) + "\n");
}

HybridGraph load(const std::filesystem::path& path) { return load_dataset(path).graph; }

void save(const HybridGraph& g, const std::filesystem::path& path, std::string name) {
  Dataset ds;
  ds.name = std::move(name);
  ds.graph = g;
  save_dataset(ds, path);
}

Dataset parse_pyg_layout(std::string_view json_text) {
  const json doc = parse_json(json_text);
  if (!doc.is_object()) schema_fail("<root>", "expected a JSON object");

  Dataset ds;
  if (auto it = doc.find("name"); it != doc.end() && it->is_string()) ds.name = *it;
  if (auto it = doc.find("feature_source"); it != doc.end() && it->is_string())
    ds.feature_source = *it;
  HybridGraph& g = ds.graph;
  g.node_features = as_matrix(require(doc, "x"), "x", std::nullopt);
  g.num_nodes = static_cast<std::size_t>(g.node_features.rows());
  if (auto it = doc.find("num_nodes"); it != doc.end()) {
    const auto declared = as_integer(*it, "num_nodes");
    if (declared != static_cast<std::int64_t>(g.num_nodes))
      schema_fail("num_nodes", "does not match the row count of x");
  }

  const json& y = require(doc, "y");
  if (!y.is_array()) schema_fail("y", "expected an array");
  std::string task = doc.contains("task") ? doc["task"].get<std::string>() : std::string{};
  if (task.empty()) {
    task = std::all_of(y.begin(), y.end(), [](const json& v) { return v.is_number_integer(); })
               ? "classification"
               : "regression";
  }
  if (task == "classification") {
    std::int64_t max_label = -1;
    for (const json& v : y) max_label = std::max(max_label, as_integer(v, "y"));
    const std::int64_t c =
        doc.contains("num_classes") ? as_integer(doc["num_classes"], "num_classes") : max_label + 1;
    g.task = Classification{static_cast<std::size_t>(std::max<std::int64_t>(c, 1))};
  } else if (task == "regression") {
    g.task = Regression{};
  } else {
    schema_fail("task", "expected \"classification\" or \"regression\"");
  }
  g.labels = parse_labels(y, g.task, g.num_nodes);

  const json& ei = require(doc, "edge_index");
  if (!ei.is_array() || ei.size() != 2 || ei[0].size() != ei[1].size())
    schema_fail("edge_index", "expected two equally long index rows");
  std::vector<Edge> edges;
  edges.reserve(ei[0].size());
  for (std::size_t i = 0; i < ei[0].size(); ++i) {
    const NodeId a = as_node(ei[0][i], g.num_nodes, "edge_index[0]");
    const NodeId b = as_node(ei[1][i], g.num_nodes, "edge_index[1]");
    if (a != b) edges.push_back(canonical({a, b}));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.simple_edges = std::move(edges);

  if (auto it = doc.find("hyperedge_index"); it != doc.end()) {
    const json& hi = *it;
    if (!hi.is_array() || hi.size() != 2 || hi[0].size() != hi[1].size())
      schema_fail("hyperedge_index", "expected two equally long index rows");
    std::map<std::int64_t, Hyperedge> groups;
    for (std::size_t i = 0; i < hi[0].size(); ++i) {
      const NodeId v = as_node(hi[0][i], g.num_nodes, "hyperedge_index[0]");
      const std::int64_t e = as_integer(hi[1][i], "hyperedge_index[1]");
      Hyperedge& he = groups[e];
      if (std::find(he.begin(), he.end(), v) == he.end()) he.push_back(v);
    }
    for (auto& [id, he] : groups) g.hyperedges.push_back(std::move(he));
  }
  g.hyperedge_weights.assign(g.hyperedges.size(), 1.0);
  g.parent = identity_parent(g.num_nodes);
  check_valid(g);
  return ds;
}

SplitMasks split(std::size_t num_nodes, std::uint64_t seed) {
  if (num_nodes < 5)
    throw ContractError("split: need at least 5 nodes, got " + std::to_string(num_nodes));
  std::vector<NodeId> order(num_nodes);
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(seed);
  for (std::size_t i = num_nodes - 1; i > 0; --i) std::swap(order[i], order[rng.index(i + 1)]);

  const std::size_t train = num_nodes * 3 / 5;
  const std::size_t val = num_nodes / 5;
  SplitMasks masks;
  masks.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train));
  masks.val.assign(order.begin() + static_cast<std::ptrdiff_t>(train),
                   order.begin() + static_cast<std::ptrdiff_t>(train + val));
  masks.test.assign(order.begin() + static_cast<std::ptrdiff_t>(train + val), order.end());
  std::sort(masks.train.begin(), masks.train.end());
  std::sort(masks.val.begin(), masks.val.end());
  std::sort(masks.test.begin(), masks.test.end());
  return masks;
}

}  // namespace hgb
