#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hgb/io.hpp"

namespace hgb::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics, usage text and the resolved configuration to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Dataset path lookup: the path itself if it exists, otherwise relative to
/// $HGB_DATA_DIR when set.
std::filesystem::path resolve_dataset_path(const std::filesystem::path& path);

/// Loads a canonical or array-layout dataset. `format` is canonical, pyg or
/// auto (array layout when the file has an edge_index field).
Dataset load_any(const std::filesystem::path& path, std::string_view format = "auto");

/// Lower-case hex SHA-256 of the file's bytes.
std::string sha256_file(const std::filesystem::path& path);

struct SuiteOptions {
  std::filesystem::path manifest;
  /// Where the JSON bundle goes; empty means `out`.
  std::filesystem::path out_path;
};

/// Runs every (dataset, model) pair of a manifest under the default protocol.
/// Returns kExitRuntime if any row was skipped.
int run_experiment_suite(const SuiteOptions& options, std::ostream& out, std::ostream& err);

}  // namespace hgb::cli
