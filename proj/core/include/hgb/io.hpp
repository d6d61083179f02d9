#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgb/construct.hpp"
#include "hgb/graph.hpp"

namespace hgb {

/// Everything a dataset file can carry. The graph itself plus the optional
/// inputs of the hyperedge-construction pipelines.
struct Dataset {
  std::string name;
  /// Free-form note on where node_features came from (for example raw
  /// attributes versus precomputed embeddings).
  std::string feature_source;
  HybridGraph graph;
  std::optional<std::vector<GenomicPosition>> positions;
  std::optional<Matrix> embeddings;
};

/// Decodes the canonical JSON layout (docs/dataset-format.md).
/// Throws ParseError, SchemaError or ValidationError; messages name the
/// offending field and, for parse errors, the line.
Dataset parse_dataset(std::string_view json_text);
std::string serialize_dataset(const Dataset& dataset);

Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const Dataset& dataset, const std::filesystem::path& path);

HybridGraph load(const std::filesystem::path& path);
/// Requires validate(g) to pass.
void save(const HybridGraph& g, const std::filesystem::path& path, std::string name = {});

/// Adapter for the array layout used by the published benchmark files
/// (x, y, edge_index, hyperedge_index). Directed arcs collapse into
/// undirected edges; self-loops are dropped.
Dataset parse_pyg_layout(std::string_view json_text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// ---------------------------------------------------------------------------

/// Disjoint train/validation/test node sets, each sorted ascending.
struct SplitMasks {
  std::vector<NodeId> train;
  std::vector<NodeId> val;
  std::vector<NodeId> test;
};

/// Uniform random permutation cut 60/20/20: train = floor(0.6 n),
/// val = floor(0.2 n), test = the remainder. Requires n >= 5.
SplitMasks split(std::size_t num_nodes, std::uint64_t seed);
inline SplitMasks split(const HybridGraph& g, std::uint64_t seed) {
  return split(g.num_nodes, seed);
}

}  // namespace hgb
