#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "hgb/gnn/synthetic.hpp"
#include "hgb/io.hpp"

using namespace hgb;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::dispatch(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path workdir() {
  const fs::path dir = fs::temp_directory_path() / "hgb_test_cli";
  fs::create_directories(dir);
  return dir;
}

fs::path synthetic_file() {
  const fs::path path = workdir() / "synthetic.json";
  if (!fs::exists(path)) {
    gnn::SyntheticConfig c;
    c.num_nodes = 60;
    c.seed = 3;
    Dataset d = gnn::make_separable(c);
    d.name = "synthetic";
    save_dataset(d, path);
  }
  return path;
}

}  // namespace

TEST_CASE("stats prints the six statistics") {
  const Run r = run({"stats", synthetic_file().string()});
  REQUIRE(r.code == cli::kExitOk);
  std::istringstream lines(r.out);
  std::vector<std::string> keys;
  for (std::string line; std::getline(lines, line);) keys.push_back(line.substr(0, line.find(' ')));
  CHECK(keys == std::vector<std::string>{"num_nodes", "num_edges", "num_hyperedges", "avg_node_degree",
                                         "avg_hyperedge_degree", "avg_clustering_coef"});
  CHECK(r.err.find("resolved configuration") != std::string::npos);

  const Run j = run({"stats", synthetic_file().string(), "--format", "json", "--count-arcs"});
  REQUIRE(j.code == 0);
  const json report = json::parse(j.out);
  CHECK(report["kind"] == "stats");
  CHECK(report["result"]["num_nodes"] == 60);
  CHECK(report["dataset"]["sha256"].get<std::string>().size() == 64);
}

TEST_CASE("train emits one value per seed") {
  const Run r = run({"train", "--model", "gcn", "--dataset", synthetic_file().string(), "--seeds", "5",
                     "--epochs", "5"});
  REQUIRE(r.code == cli::kExitOk);
  const json report = json::parse(r.out);
  CHECK(report["result"]["values"].size() == 5);
  CHECK(report["result"].contains("mean"));
  CHECK(report["result"].contains("std"));
  CHECK(r.err.find("±") != std::string::npos);
}

TEST_CASE("save-model then eval") {
  const fs::path model = workdir() / "model.json";
  REQUIRE(run({"train", "--model", "sage", "--dataset", synthetic_file().string(), "--seeds", "1",
               "--epochs", "3", "--save-model", model.string()})
              .code == 0);
  const Run e = run({"eval", "--model-file", model.string(), "--dataset", synthetic_file().string()});
  REQUIRE(e.code == 0);
  CHECK(json::parse(e.out)["result"]["metric"] == "accuracy");
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  const Run flag = run({"stats", synthetic_file().string(), "--no-such-flag"});
  CHECK(flag.code == cli::kExitUsage);
  CHECK(flag.err.find("Usage") != std::string::npos);
  CHECK(run({"stats", (workdir() / "missing.json").string()}).code == cli::kExitRuntime);
  CHECK(run({"sample", "--in", synthetic_file().string(), "--method", "node", "--budget", "100000"}).code ==
        cli::kExitRuntime);
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"--version"}).code == cli::kExitOk);
}

TEST_CASE("config file values are overridden by flags") {
  const fs::path cfg = workdir() / "train.ini";
  write_text_file(cfg, "model=gcn\nseeds=2\nepochs=2\n");
  const Run a = run({"train", "--config", cfg.string(), "--dataset", synthetic_file().string()});
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["result"]["values"].size() == 2);
  const Run b = run({"train", "--config", cfg.string(), "--dataset", synthetic_file().string(), "--seeds", "3"});
  REQUIRE(b.code == 0);
  CHECK(json::parse(b.out)["result"]["values"].size() == 3);
}

TEST_CASE("relative dataset paths resolve under HGB_DATA_DIR") {
  synthetic_file();
  ::setenv("HGB_DATA_DIR", workdir().c_str(), 1);
  const Run r = run({"stats", "synthetic.json"});
  ::unsetenv("HGB_DATA_DIR");
  CHECK(r.code == 0);
}

TEST_CASE("sample and split write reports") {
  const Run s = run({"sample", "--in", synthetic_file().string(), "--method", "rw", "--budget", "5", "--seed", "2"});
  REQUIRE(s.code == 0);
  CHECK(s.out == run({"sample", "--in", synthetic_file().string(), "--method", "rw", "--budget", "5", "--seed", "2"}).out);
  const Run sp = run({"split", "--in", synthetic_file().string(), "--seed", "1"});
  REQUIRE(sp.code == 0);
  const json masks = json::parse(sp.out)["result"]["masks"];
  CHECK(masks["train"].size() + masks["val"].size() + masks["test"].size() == 60);
}

TEST_CASE("suite records missing datasets") {
  const fs::path manifest = workdir() / "suite.json";
  write_text_file(manifest, R"({"name": "t", "master_seed": 1, "defaults": {"epochs": 2, "seeds": 1},
    "runs": [{"dataset": "synthetic.json", "model": "gcn"}, {"dataset": "absent.json", "model": "gcn"}]})");
  const Run r = run({"suite", "--manifest", manifest.string()});
  CHECK(r.code == cli::kExitRuntime);
  const json bundle = json::parse(r.out);
  REQUIRE(bundle["rows"].size() == 2);
  CHECK(bundle["rows"][0]["status"] == "ok");
  CHECK(bundle["rows"][1]["status"] == "skipped");
  CHECK(r.out == run({"suite", "--manifest", manifest.string()}).out);
}
