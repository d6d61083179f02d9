#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "hgb/construct.hpp"
#include "hgb/error.hpp"
#include "hgb/gnn/model.hpp"
#include "hgb/gnn/train.hpp"
#include "hgb/sample.hpp"
#include "hgb/stats.hpp"
#include "hgb/version.hpp"
#include "report.hpp"

namespace hgb::cli {

namespace fs = std::filesystem;

fs::path resolve_dataset_path(const fs::path& path) {
  if (path.is_absolute() || fs::exists(path)) return path;
  if (const char* dir = std::getenv("HGB_DATA_DIR"); dir && *dir) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate;
  }
  return path;
}

Dataset load_any(const fs::path& path, std::string_view format) {
  const std::string text = read_text_file(path);
  bool pyg = format == "pyg";
  if (format == "auto") pyg = text.find("\"edge_index\"") != std::string::npos;
  else if (format != "canonical" && format != "pyg")
    throw ContractError("unknown dataset format '" + std::string(format) + "'");
  try {
    return pyg ? parse_pyg_layout(text) : parse_dataset(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(path.string() + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

namespace {

const std::vector<std::string> kSamplers = {"node", "edge", "rw", "rand-node", "rand-hyperedge"};

void emit(const Json& report, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << dump(report);
  } else {
    write_text_file(out_path, dump(report));
  }
}

SamplerSpec sampler_spec(const std::string& method, std::size_t budget, std::size_t walk_length) {
  SamplerSpec spec;
  spec.kind = parse_sampler_kind(method);
  spec.budget = budget;
  spec.walk_length = walk_length;
  return spec;
}

Json sampler_config(const SamplerSpec& s) {
  return Json{{"method", to_string(s.kind)}, {"budget", s.budget}, {"walk_length", s.walk_length}};
}

// ---------------------------------------------------------------------------

struct StatsOptions {
  std::string file;
  std::string format = "table";
  std::string from = "auto";
  bool count_arcs = false;
};

void run_stats(const StatsOptions& o, std::ostream& out) {
  const fs::path path = resolve_dataset_path(o.file);
  const Dataset d = load_any(path, o.from);
  const EdgeCounting counting = o.count_arcs ? EdgeCounting::arcs : EdgeCounting::undirected;
  const GraphStats s = compute_stats(d.graph, counting);
  if (o.format == "json") {
    Json report = envelope("stats", Json{{"edge_counting", o.count_arcs ? "arcs" : "undirected"}});
    report["dataset"] = dataset_json(path, d);
    report["result"] = stats_json(s);
    out << dump(report);
    return;
  }
  std::ostringstream t;
  t << std::left << std::fixed << std::setprecision(4);
  t << std::setw(22) << "num_nodes" << s.num_nodes << "\n";
  t << std::setw(22) << "num_edges" << s.num_edges << "\n";
  t << std::setw(22) << "num_hyperedges" << s.num_hyperedges << "\n";
  t << std::setw(22) << "avg_node_degree" << s.avg_node_degree << "\n";
  t << std::setw(22) << "avg_hyperedge_degree" << s.avg_hyperedge_degree << "\n";
  t << std::setw(22) << "avg_clustering_coef" << s.avg_clustering_coef << "\n";
  out << t.str();
}

struct ConvertOptions {
  std::string in, out;
  std::string from = "auto";
  std::string to = "canonical";
};

void run_convert(const ConvertOptions& o, std::ostream& out) {
  const fs::path path = resolve_dataset_path(o.in);
  Dataset d = load_any(path, o.from);
  const GraphKind before = classify(d.graph);
  if (o.to == "simple") d.graph = to_simple(d.graph);
  else if (o.to == "hypergraph") d.graph = to_hypergraph(d.graph);
  else if (o.to == "hierarchy") d.graph = to_two_level_hierarchy(d.graph);
  if (o.to != "canonical") {
    // Transformed graphs change the node set or drop fields tied to the old one.
    if (d.embeddings && static_cast<std::size_t>(d.embeddings->rows()) != d.graph.num_nodes)
      d.embeddings.reset();
    if (d.positions && d.positions->size() != d.graph.num_nodes) d.positions.reset();
  }
  save_dataset(d, o.out);
  Json report = envelope("convert", Json{{"from", o.from}, {"to", o.to}, {"out", o.out}});
  report["dataset"] = dataset_json(path, d);
  report["result"] = Json{{"kind_before", to_string(before)},
                          {"kind_after", to_string(classify(d.graph))},
                          {"stats", stats_json(compute_stats(d.graph))}};
  out << dump(report);
}

struct SplitOptions {
  std::string in, out;
  std::uint64_t seed = 0;
};

void run_split(const SplitOptions& o, std::ostream& out) {
  const fs::path path = resolve_dataset_path(o.in);
  const Dataset d = load_any(path);
  const SplitMasks masks = split(d.graph, o.seed);
  Json report = envelope("split", Json{{"seed", o.seed}});
  report["dataset"] = dataset_json(path, d);
  report["result"] = Json{{"sizes",
                           {masks.train.size(), masks.val.size(), masks.test.size()}},
                          {"masks", masks_json(masks)}};
  emit(report, o.out, out);
  if (!o.out.empty())
    out << "train " << masks.train.size() << "  val " << masks.val.size() << "  test "
        << masks.test.size() << "\n";
}

struct BuildOptions {
  std::string in, out;
  std::string method = "clique";
  std::size_t min_size = 3;
  std::optional<double> threshold;
  std::string metric = "euclidean";
};

void run_build(const BuildOptions& o, std::ostream& out) {
  const fs::path path = resolve_dataset_path(o.in);
  Dataset d = load_any(path);
  std::vector<Hyperedge> built;
  std::string source;
  if (o.method == "clique") {
    built = cliques_to_hyperedges(d.graph.simple_edges, d.graph.num_nodes, o.min_size);
    source = "simple_edges";
  } else if (o.method == "interval") {
    if (!d.positions) throw SchemaError("build-hyperedges: interval method needs 'positions'");
    const double bp = o.threshold.value_or(200000.0);
    if (!(bp >= 0.0) || bp != static_cast<double>(static_cast<std::int64_t>(bp)))
      throw ContractError("build-hyperedges: interval threshold must be a whole number of bp");
    built = interval_hyperedges(*d.positions, static_cast<std::int64_t>(bp));
    source = "positions";
  } else {
    if (!o.threshold) throw ContractError("build-hyperedges: ball method needs --threshold");
    const Matrix& emb = d.embeddings ? *d.embeddings : d.graph.node_features;
    source = d.embeddings ? "embeddings" : "node_features";
    built = ball_hyperedges(emb, *o.threshold, parse_metric(o.metric));
  }
  d.graph.hyperedges = std::move(built);
  d.graph.hyperedge_weights.assign(d.graph.hyperedges.size(), 1.0);
  d.graph.hyperedge_features.reset();
  save_dataset(d, o.out);

  Json config{{"method", o.method}, {"out", o.out}};
  if (o.method == "clique") config["min_size"] = o.min_size;
  if (o.method == "interval") config["threshold"] = o.threshold.value_or(200000.0);
  if (o.method == "ball") {
    config["threshold"] = *o.threshold;
    config["metric"] = o.metric;
  }
  Json report = envelope("build-hyperedges", std::move(config));
  report["dataset"] = dataset_json(path, d);
  const GraphStats s = compute_stats(d.graph);
  report["result"] = Json{{"source", source},
                          {"num_hyperedges", s.num_hyperedges},
                          {"avg_hyperedge_degree", s.avg_hyperedge_degree}};
  out << dump(report);
}

struct SampleOptions {
  std::string in, out, report_out;
  std::string method = "node";
  std::size_t budget = 0;
  std::size_t roots = 0;
  std::size_t walk_length = 2;
  std::uint64_t seed = 0;
};

void run_sample(const SampleOptions& o, std::ostream& out) {
  const fs::path path = resolve_dataset_path(o.in);
  const Dataset d = load_any(path);
  std::size_t budget = o.budget;
  if (o.method == "rw" && o.roots > 0) budget = o.roots;
  if (budget == 0) throw ContractError("sample: --budget (or --roots for rw) is required");
  const SamplerSpec spec = sampler_spec(o.method, budget, o.walk_length);
  Rng rng(o.seed);
  const SampledSubgraph sub = draw(d.graph, spec, rng);
  if (!o.out.empty()) {
    Dataset part;
    part.name = d.name + ".sample";
    part.feature_source = d.feature_source;
    part.graph = sub.graph;
    save_dataset(part, o.out);
  }
  Json config = sampler_config(spec);
  config["seed"] = o.seed;
  Json report = envelope("sample", std::move(config));
  report["dataset"] = dataset_json(path, d);
  report["result"] = subgraph_json(sub);
  emit(report, o.report_out, out);
}

struct SamplerReportOptions {
  std::string in;
  std::string method = "node";
  std::size_t budget = 0;
  std::size_t walk_length = 2;
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::string format = "json";
  bool count_arcs = false;
};

void run_sampler_report(const SamplerReportOptions& o, std::ostream& out) {
  const fs::path path = resolve_dataset_path(o.in);
  const Dataset d = load_any(path);
  if (o.budget == 0) throw ContractError("sampler-report: --budget is required");
  const SamplerSpec spec = sampler_spec(o.method, o.budget, o.walk_length);
  const SamplerReport r = sampler_report(d.graph, spec, o.trials, o.seed);
  if (o.format == "table") {
    std::ostringstream t;
    t << std::left << std::fixed << std::setprecision(4);
    t << std::setw(22) << "trials" << r.trials << "\n";
    t << std::setw(22) << "num_nodes" << r.num_nodes << "\n";
    t << std::setw(22) << "num_edges" << r.num_edges << "\n";
    t << std::setw(22) << "num_hyperedges" << r.num_hyperedges << "\n";
    t << std::setw(22) << "avg_node_degree" << r.avg_node_degree << "\n";
    t << std::setw(22) << "avg_hyperedge_degree" << r.avg_hyperedge_degree << "\n";
    t << std::setw(22) << "avg_clustering_coef" << r.avg_clustering_coef << "\n";
    out << t.str();
    return;
  }
  Json config = sampler_config(spec);
  config["trials"] = o.trials;
  config["seed"] = o.seed;
  Json report = envelope("sampler-report", std::move(config));
  report["dataset"] = dataset_json(path, d);
  report["result"] = sampler_report_json(r);
  out << dump(report);
}

struct TrainOptions {
  std::string model = "gcn";
  std::string dataset;
  std::size_t epochs = 50;
  double lr = 0.01;
  std::size_t hidden = 32;
  std::size_t layers = 2;
  double dropout = 0.5;
  std::size_t seeds = 5;
  std::uint64_t seed = 0;
  std::uint64_t split_seed = 0;
  std::string saint;
  std::size_t budget = 0;
  std::size_t batch = 5;
  std::size_t walk_length = 2;
  std::string out;
  std::string save_model;
};

Json train_config_json(const gnn::ModelSpec& spec, const gnn::TrainConfig& c,
                       std::uint64_t split_seed) {
  Json config{{"model", spec.name()},
              {"layers", spec.num_layers},
              {"hidden", spec.hidden_dim},
              {"dropout", spec.dropout},
              {"epochs", c.epochs},
              {"lr", c.learning_rate},
              {"seeds", c.seeds},
              {"seed", c.seed},
              {"split_seed", split_seed}};
  if (c.saint) {
    Json s = sampler_config(c.saint->sampler);
    s["batch"] = c.saint->batch;
    config["saint"] = std::move(s);
  } else {
    config["saint"] = nullptr;
  }
  return config;
}

void run_train(const TrainOptions& o, std::ostream& out, std::ostream& err) {
  const fs::path path = resolve_dataset_path(o.dataset);
  const Dataset d = load_any(path);
  gnn::ModelSpec spec = gnn::parse_model_spec(o.model);
  spec.hidden_dim = o.hidden;
  spec.num_layers = o.layers;
  spec.dropout = o.dropout;
  gnn::TrainConfig config;
  config.learning_rate = o.lr;
  config.epochs = o.epochs;
  config.seeds = o.seeds;
  config.seed = o.seed;
  if (!o.saint.empty()) {
    if (o.budget == 0) throw ContractError("train: --saint needs --budget");
    config.saint = gnn::SaintConfig{sampler_spec(o.saint, o.budget, o.walk_length), o.batch};
  }
  const SplitMasks masks = split(d.graph, o.split_seed);
  const gnn::TrainReport result = gnn::train(d.graph, masks, spec, config);
  if (!o.save_model.empty()) {
    // The saved model is the first seed's run, retrained deterministically.
    const gnn::TrainedModel first = gnn::train_once(d.graph, masks, spec, config,
                                                    mix_seed(config.seed, 0));
    write_text_file(o.save_model, gnn::serialize_model(first.model));
  }
  Json report = envelope("train", train_config_json(spec, config, o.split_seed));
  report["dataset"] = dataset_json(path, d);
  report["result"] = train_json(result, spec);
  emit(report, o.out, out);
  const std::string row = spec.name() + "\t" + (d.name.empty() ? path.stem().string() : d.name) +
                          "\t" + mean_std(result.mean, result.std) + "\n";
  (o.out.empty() ? err : out) << row;
  for (const auto& run : result.runs)
    if (!run.completed) err << "warning: seed " << run.seed << ": " << run.diagnostic << "\n";
}

struct EvalOptions {
  std::string model_file;
  std::string dataset;
  std::uint64_t split_seed = 0;
  std::string mask = "test";
};

void run_eval(const EvalOptions& o, std::ostream& out) {
  const fs::path path = resolve_dataset_path(o.dataset);
  const Dataset d = load_any(path);
  const gnn::Model model = gnn::parse_model(read_text_file(o.model_file));
  std::vector<NodeId> nodes;
  if (o.mask == "all") {
    nodes.resize(d.graph.num_nodes);
    for (NodeId v = 0; v < d.graph.num_nodes; ++v) nodes[v] = v;
  } else {
    const SplitMasks masks = split(d.graph, o.split_seed);
    nodes = o.mask == "train" ? masks.train : o.mask == "val" ? masks.val : masks.test;
  }
  const double value = gnn::evaluate(model, d.graph, nodes);
  Json report = envelope("eval", Json{{"model_file", o.model_file},
                                      {"model", model.spec().name()},
                                      {"split_seed", o.split_seed},
                                      {"mask", o.mask}});
  report["dataset"] = dataset_json(path, d);
  report["result"] = Json{{"metric", d.graph.is_classification() ? "accuracy" : "mse"},
                          {"value", value},
                          {"num_nodes", nodes.size()}};
  out << dump(report);
}

/// Expands `--config FILE` after the subcommand into flags placed before the
/// ones typed by the user, so the typed ones win. Keys may sit at top level or
/// under a section named after the subcommand.
std::vector<std::string> expand_config(const CLI::App& app, const std::vector<std::string>& args) {
  if (args.empty()) return args;
  const CLI::App* sub = nullptr;
  for (const CLI::App* s : app.get_subcommands({}))
    if (s->get_name() == args[0]) sub = s;
  if (sub == nullptr) return args;
  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::string file;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] == "--config" && i + 1 < rest.size()) file = rest[i + 1];
    else if (rest[i].rfind("--config=", 0) == 0) file = rest[i].substr(9);
  }
  if (file.empty()) return args;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(file);
  } catch (const CLI::FileError&) {
    throw CLI::FileError::Missing(file);
  }
  std::vector<std::string> injected{args[0]};
  for (const CLI::ConfigItem& item : items) {
    if (item.name == "++" || item.name == "--") continue;
    if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == sub->get_name()))
      continue;
    const CLI::Option* opt = sub->get_option_no_throw("--" + item.name);
    if (opt == nullptr) throw CLI::ConfigError::Extras(item.fullname());
    if (opt->get_expected_min() == 0) {
      if (!item.inputs.empty() && CLI::detail::to_flag_value(item.inputs.front()) > 0)
        injected.push_back("--" + item.name);
      continue;
    }
    for (const std::string& value : item.inputs) {
      injected.push_back("--" + item.name);
      injected.push_back(value);
    }
  }
  injected.insert(injected.end(), rest.begin(), rest.end());
  return injected;
}

std::string usage_of(const CLI::App& app) {
  for (const CLI::App* sub : app.get_subcommands()) return sub->help();
  return app.help();
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toolkit for graphs with higher-order structure", kToolkitName};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", std::string(kToolkitName) + " " + kVersion);
  app.option_defaults()->always_capture_default()->multi_option_policy(
      CLI::MultiOptionPolicy::TakeLast);

  auto config_option = [](CLI::App* sub) {
    sub->add_option("--config", "Read options from a TOML/INI file; flags override it");
  };

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Print graph statistics");
  stats_cmd->add_option("file", stats.file, "Dataset file")->required();
  stats_cmd->add_option("--format", stats.format)->check(CLI::IsMember({"table", "json"}));
  stats_cmd->add_option("--from", stats.from)->check(CLI::IsMember({"auto", "canonical", "pyg"}));
  stats_cmd->add_flag("--count-arcs", stats.count_arcs,
                      "Count each edge once per direction, as the published tables do");
  config_option(stats_cmd);

  ConvertOptions convert;
  auto* convert_cmd = app.add_subcommand("convert", "Convert a dataset between layouts and kinds");
  convert_cmd->add_option("--in", convert.in)->required();
  convert_cmd->add_option("--out", convert.out)->required();
  convert_cmd->add_option("--from", convert.from)
      ->check(CLI::IsMember({"auto", "canonical", "pyg"}));
  convert_cmd->add_option("--to", convert.to)
      ->check(CLI::IsMember({"canonical", "simple", "hypergraph", "hierarchy"}));
  config_option(convert_cmd);

  SplitOptions split_opts;
  auto* split_cmd = app.add_subcommand("split", "Random 6:2:2 train/val/test split");
  split_cmd->add_option("--in", split_opts.in)->required();
  split_cmd->add_option("--seed", split_opts.seed);
  split_cmd->add_option("--out", split_opts.out, "Write the masks report here");
  config_option(split_cmd);

  BuildOptions build;
  auto* build_cmd = app.add_subcommand("build-hyperedges", "Replace hyperedges by a construction");
  build_cmd->add_option("--in", build.in)->required();
  build_cmd->add_option("--out", build.out)->required();
  build_cmd->add_option("--method", build.method)
      ->check(CLI::IsMember({"clique", "interval", "ball"}));
  build_cmd->add_option("--min-size", build.min_size)->check(CLI::PositiveNumber);
  build_cmd->add_option("--threshold", build.threshold,
                        "Base pairs (interval, default 200000) or ball radius (ball, required)");
  build_cmd->add_option("--metric", build.metric)->check(CLI::IsMember({"euclidean", "cosine"}));
  config_option(build_cmd);

  SampleOptions sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw one subgraph");
  sample_cmd->add_option("--in", sample.in)->required();
  sample_cmd->add_option("--method", sample.method)->check(CLI::IsMember(kSamplers));
  sample_cmd->add_option("--budget", sample.budget, "Nodes, edges, roots or hyperedges");
  sample_cmd->add_option("--roots", sample.roots, "Random-walk roots (overrides --budget)");
  sample_cmd->add_option("--walk-length", sample.walk_length);
  sample_cmd->add_option("--seed", sample.seed);
  sample_cmd->add_option("--out", sample.out, "Write the subgraph as a dataset file");
  sample_cmd->add_option("--report", sample.report_out, "Write the JSON report here");
  config_option(sample_cmd);

  SamplerReportOptions srep;
  auto* srep_cmd = app.add_subcommand("sampler-report", "Average statistics of sampled subgraphs");
  srep_cmd->add_option("--in", srep.in)->required();
  srep_cmd->add_option("--method", srep.method)->check(CLI::IsMember(kSamplers));
  srep_cmd->add_option("--budget", srep.budget)->required();
  srep_cmd->add_option("--walk-length", srep.walk_length);
  srep_cmd->add_option("--trials", srep.trials)->check(CLI::PositiveNumber);
  srep_cmd->add_option("--seed", srep.seed);
  srep_cmd->add_option("--format", srep.format)->check(CLI::IsMember({"table", "json"}));
  config_option(srep_cmd);

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "Train and score a model over several seeds");
  train_cmd->add_option("--model", train.model, "gcn|sage|gat|gatv2|hyperconv|hyperatten|lp:<m1>+<m2>");
  train_cmd->add_option("--dataset,--in", train.dataset)->required();
  train_cmd->add_option("--epochs", train.epochs)->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", train.lr);
  train_cmd->add_option("--hidden", train.hidden)->check(CLI::PositiveNumber);
  train_cmd->add_option("--layers", train.layers)->check(CLI::PositiveNumber);
  train_cmd->add_option("--dropout", train.dropout);
  train_cmd->add_option("--seeds", train.seeds)->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", train.seed);
  train_cmd->add_option("--split-seed", train.split_seed);
  train_cmd->add_option("--saint", train.saint, "Subgraph sampler for batched training")
      ->check(CLI::IsMember(kSamplers));
  train_cmd->add_option("--budget", train.budget, "Sampler budget");
  train_cmd->add_option("--batch", train.batch, "Subgraphs per epoch")->check(CLI::PositiveNumber);
  train_cmd->add_option("--walk-length", train.walk_length);
  train_cmd->add_option("--out", train.out, "Write the JSON report here");
  train_cmd->add_option("--save-model", train.save_model, "Save the first seed's model");
  config_option(train_cmd);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Score a saved model");
  eval_cmd->add_option("--model-file", eval.model_file)->required();
  eval_cmd->add_option("--dataset,--in", eval.dataset)->required();
  eval_cmd->add_option("--split-seed", eval.split_seed);
  eval_cmd->add_option("--mask", eval.mask)->check(CLI::IsMember({"train", "val", "test", "all"}));
  config_option(eval_cmd);

  SuiteOptions suite;
  std::string suite_manifest, suite_out;
  auto* suite_cmd = app.add_subcommand("suite", "Run every (dataset, model) pair of a manifest");
  suite_cmd->add_option("--manifest", suite_manifest)->required();
  suite_cmd->add_option("--out", suite_out, "Write the JSON bundle here");
  config_option(suite_cmd);

  try {
    const std::vector<std::string> expanded = expand_config(app, args);
    app.parse(std::vector<std::string>(expanded.rbegin(), expanded.rend()));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n" << usage_of(app);
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  err << "# " << kToolkitName << " " << kVersion << " " << chosen->get_name()
      << " resolved configuration\n"
      << chosen->config_to_str(true, false);

  try {
    if (*stats_cmd) run_stats(stats, out);
    else if (*convert_cmd) run_convert(convert, out);
    else if (*split_cmd) run_split(split_opts, out);
    else if (*build_cmd) run_build(build, out);
    else if (*sample_cmd) run_sample(sample, out);
    else if (*srep_cmd) run_sampler_report(srep, out);
    else if (*train_cmd) run_train(train, out, err);
    else if (*eval_cmd) run_eval(eval, out);
    else if (*suite_cmd) {
      suite.manifest = suite_manifest;
      suite.out_path = suite_out;
      return run_experiment_suite(suite, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace hgb::cli
