#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hgb/gnn/train.hpp"
#include "hgb/io.hpp"
#include "hgb/sample.hpp"
#include "hgb/stats.hpp"

namespace hgb::cli {

using Json = nlohmann::ordered_json;

/// Common report header: kind, toolkit, version, then `config`.
Json envelope(std::string_view kind, Json config);

/// Path, declared name and SHA-256 of a dataset file.
Json dataset_json(const std::filesystem::path& path, const Dataset& dataset);

Json stats_json(const GraphStats& stats);
Json sampler_report_json(const SamplerReport& report);
Json subgraph_json(const SampledSubgraph& sub);
Json train_json(const gnn::TrainReport& report, const gnn::ModelSpec& spec);
Json masks_json(const SplitMasks& masks);

/// "0.689 ± 0.006"
std::string mean_std(double mean, double std, int digits = 3);

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

}  // namespace hgb::cli
