#include "report.hpp"

#include <cstdio>
#include <fstream>

#include <openssl/evp.h>

#include "cli.hpp"
#include "hgb/error.hpp"
#include "hgb/version.hpp"

namespace hgb::cli {

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for hashing");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256: digest initialisation failed");
  }
  char buffer[1 << 16];
  while (in) {
    in.read(buffer, sizeof buffer);
    if (in.gcount() > 0) EVP_DigestUpdate(ctx, buffer, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx, digest, &length);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", digest[i]);
    hex += byte;
  }
  return hex;
}

Json envelope(std::string_view kind, Json config) {
  return Json{{"kind", kind}, {"toolkit", kToolkitName}, {"version", kVersion},
              {"config", std::move(config)}};
}

Json dataset_json(const std::filesystem::path& path, const Dataset& dataset) {
  return Json{{"path", path.string()},
              {"name", dataset.name},
              {"feature_source", dataset.feature_source},
              {"sha256", sha256_file(path)}};
}

Json stats_json(const GraphStats& s) {
  return Json{{"num_nodes", s.num_nodes},
              {"num_edges", s.num_edges},
              {"num_hyperedges", s.num_hyperedges},
              {"avg_node_degree", s.avg_node_degree},
              {"avg_hyperedge_degree", s.avg_hyperedge_degree},
              {"avg_clustering_coef", s.avg_clustering_coef}};
}

Json sampler_report_json(const SamplerReport& r) {
  return Json{{"trials", r.trials},
              {"num_nodes", r.num_nodes},
              {"num_edges", r.num_edges},
              {"num_hyperedges", r.num_hyperedges},
              {"avg_node_degree", r.avg_node_degree},
              {"avg_hyperedge_degree", r.avg_hyperedge_degree},
              {"avg_clustering_coef", r.avg_clustering_coef}};
}

Json subgraph_json(const SampledSubgraph& sub) {
  return Json{{"node_ids", sub.node_ids},
              {"hyperedge_ids", sub.hyperedge_ids},
              {"stats", stats_json(compute_stats(sub.graph))}};
}

Json train_json(const gnn::TrainReport& report, const gnn::ModelSpec& spec) {
  Json runs = Json::array();
  for (const gnn::SeedRun& run : report.runs) {
    Json r{{"seed", run.seed}, {"completed", run.completed}};
    r["value"] = run.completed ? Json(run.value) : Json(nullptr);
    r["loss_curve"] = run.loss_curve;
    r["diagnostic"] = run.diagnostic;
    runs.push_back(std::move(r));
  }
  return Json{{"model", spec.name()},
              {"metric", gnn::to_string(report.metric)},
              {"values", report.values},
              {"mean", report.mean},
              {"std", report.std},
              {"runs", std::move(runs)}};
}

Json masks_json(const SplitMasks& masks) {
  return Json{{"train", masks.train}, {"val", masks.val}, {"test", masks.test}};
}

std::string mean_std(double mean, double std, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f ± %.*f", digits, mean, digits, std);
  return buffer;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace hgb::cli
