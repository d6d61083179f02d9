#include <iostream>
#include <sstream>

#include "cli.hpp"
#include "hgb/error.hpp"
#include "hgb/gnn/train.hpp"
#include "report.hpp"

namespace hgb::cli {

namespace fs = std::filesystem;

namespace {

struct Protocol {
  std::size_t epochs = 50;
  double lr = 0.01;
  std::size_t hidden = 32;
  std::size_t layers = 2;
  double dropout = 0.5;
  std::size_t seeds = 5;
};

Protocol read_protocol(const Json& j, Protocol p) {
  p.epochs = j.value("epochs", p.epochs);
  p.lr = j.value("lr", p.lr);
  p.hidden = j.value("hidden", p.hidden);
  p.layers = j.value("layers", p.layers);
  p.dropout = j.value("dropout", p.dropout);
  p.seeds = j.value("seeds", p.seeds);
  return p;
}

Json protocol_json(const Protocol& p) {
  return Json{{"epochs", p.epochs}, {"lr", p.lr},           {"hidden", p.hidden},
              {"layers", p.layers}, {"dropout", p.dropout}, {"seeds", p.seeds}};
}

fs::path locate(const fs::path& dataset, const fs::path& manifest_dir) {
  if (dataset.is_relative() && fs::exists(manifest_dir / dataset)) return manifest_dir / dataset;
  return resolve_dataset_path(dataset);
}

}  // namespace

int run_experiment_suite(const SuiteOptions& options, std::ostream& out, std::ostream& err) {
  Json manifest;
  try {
    manifest = Json::parse(read_text_file(options.manifest));
  } catch (const Json::parse_error& e) {
    throw ParseError(options.manifest.string() + ": " + e.what());
  }
  if (!manifest.contains("runs") || !manifest["runs"].is_array())
    throw SchemaError(options.manifest.string() + ": 'runs' must be an array");
  const std::uint64_t master_seed = manifest.value("master_seed", std::uint64_t{0});
  const Protocol defaults = read_protocol(manifest.value("defaults", Json::object()), Protocol{});
  const fs::path manifest_dir = options.manifest.parent_path();

  Json bundle = envelope("suite", Json{{"manifest", options.manifest.string()},
                                       {"name", manifest.value("name", std::string())},
                                       {"master_seed", master_seed},
                                       {"defaults", protocol_json(defaults)}});
  Json rows = Json::array();
  std::ostringstream table;
  bool skipped = false;

  for (const Json& run : manifest["runs"]) {
    const std::string dataset_name = run.at("dataset").get<std::string>();
    const std::string model_name = run.at("model").get<std::string>();
    const Protocol p = read_protocol(run, defaults);
    Json row{{"dataset", dataset_name}, {"model", model_name}, {"protocol", protocol_json(p)}};
    const fs::path path = locate(dataset_name, manifest_dir);
    if (!fs::exists(path)) {
      row["status"] = "skipped";
      row["reason"] = "dataset file not found: " + dataset_name;
      table << model_name << "\t" << dataset_name << "\tskipped (missing dataset)\n";
      rows.push_back(std::move(row));
      skipped = true;
      continue;
    }
    try {
      const Dataset d = load_any(path);
      gnn::ModelSpec spec = gnn::parse_model_spec(model_name);
      spec.hidden_dim = p.hidden;
      spec.num_layers = p.layers;
      spec.dropout = p.dropout;
      gnn::TrainConfig config;
      config.epochs = p.epochs;
      config.learning_rate = p.lr;
      config.seeds = p.seeds;
      config.seed = master_seed;
      if (run.contains("saint")) {
        const Json& s = run["saint"];
        SamplerSpec sampler;
        sampler.kind = parse_sampler_kind(s.at("method").get<std::string>());
        sampler.budget = s.at("budget").get<std::size_t>();
        sampler.walk_length = s.value("walk_length", std::size_t{2});
        config.saint = gnn::SaintConfig{sampler, s.value("batch", std::size_t{5})};
        row["saint"] = s;
      }
      const SplitMasks masks = split(d.graph, master_seed);
      const gnn::TrainReport report = gnn::train(d.graph, masks, spec, config);
      row["status"] = "ok";
      row["sha256"] = sha256_file(path);
      row["result"] = train_json(report, spec);
      row["row"] = mean_std(report.mean, report.std);
      table << model_name << "\t" << dataset_name << "\t" << mean_std(report.mean, report.std)
            << "\n";
    } catch (const Error& e) {
      row["status"] = "skipped";
      row["reason"] = e.what();
      table << model_name << "\t" << dataset_name << "\tskipped (" << e.what() << ")\n";
      skipped = true;
    }
    rows.push_back(std::move(row));
  }
  bundle["rows"] = std::move(rows);

  if (options.out_path.empty()) {
    out << dump(bundle);
    err << table.str();
  } else {
    write_text_file(options.out_path, dump(bundle));
    out << table.str();
  }
  return skipped ? kExitRuntime : kExitOk;
}

}  // namespace hgb::cli
