#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "meshgnn/artifact.hpp"
#include "meshgnn/errors.hpp"
#include "meshgnn/mesh_io.hpp"
#include "support/fixtures.hpp"

using namespace meshgnn;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

// Small dataset and a briefly trained model shared by several cases.
struct Workspace {
  testing::TempDir dir{"cli"};
  std::string data = (dir / "data").string();
  std::string model = (dir / "m.gnn").string();

  Workspace() {
    REQUIRE(run({"generate", "--out", data, "--n-sims", "6", "--grid", "5x5"}).code == 0);
    REQUIRE(run({"train", "--data", data, "--epochs", "5", "--out", model, "--history",
                 (dir / "h.csv").string(), "--log-every", "0"})
                .code == 0);
  }
};

}  // namespace

TEST_CASE("config file tokens") {
  CHECK(cli::config_tokens("# comment\nepochs = 10\n\n lr=0.01  # trailing\nbatch_size = 1\n") ==
        std::vector<std::string>{"--epochs=10", "--lr=0.01", "--batch-size=1"});
  CHECK_THROWS_AS(cli::config_tokens("epochs 10\n"), ConfigError);
  CHECK_THROWS_AS(cli::config_tokens("= 3\n"), ConfigError);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"train"}).code == 2);
  CHECK(run({"train", "--data", "x", "--kind", "transformer"}).code == 2);
  CHECK(run({"train", "--data", "x", "--epochs", "ten"}).code == 2);
  CHECK(run({"generate", "--out", "x", "--grid", "16by16"}).code == 2);
  CHECK(run({"generate", "--out", "x", "--train-fraction", "1.5"}).code == 2);
  CHECK(run({"predict", "--model", "m", "--mesh", "x", "--temperature", "-3", "--friction",
             "0.2", "--out", "y"})
            .code == 2);
  CHECK(run({"--config", "/nonexistent/file.cfg", "train", "--data", "x"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("invalid configuration leaves no partial outputs") {
  testing::TempDir dir("cli_partial");
  const auto out = dir / "never";
  CHECK(run({"generate", "--out", out.string(), "--n-sims", "0"}).code == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(run({"train", "--data", dir.path().string(), "--epochs", "0", "--out",
             (dir / "m.gnn").string()})
            .code == 2);
  CHECK_FALSE(fs::exists(dir / "m.gnn"));
}

TEST_CASE("runtime failures exit with 1") {
  testing::TempDir dir("cli_runtime");
  CHECK(run({"train", "--data", (dir / "missing").string()}).code == 1);
  CHECK(run({"evaluate", "--model", (dir / "none.gnn").string(), "--data",
             dir.path().string()})
            .code == 1);
}

TEST_CASE("generate") {
  testing::TempDir dir("cli_gen");
  const auto r = run({"generate", "--out", (dir / "d").string(), "--n-sims", "4",
                      "--train-fraction", "0.75", "--grid", "4x3", "--die", "udd"});
  CHECK(r.code == 0);
  CHECK(r.out.find("3 train / 1 test") != std::string::npos);
  const auto manifest = read_manifest(dir / "d");
  CHECK(manifest.size() == 4);
  CHECK(read_mesh_file(dir / "d" / "sim_0000.mesh").points.size() == 12);
}

TEST_CASE("train, evaluate, predict, sweep, timeit") {
  Workspace ws;
  const auto& dir = ws.dir;

  SUBCASE("history has one row per epoch") {
    const auto hist = read_text_file(dir / "h.csv");
    CHECK(lines(hist).front() == "epoch,train_mse,test_mse");
    CHECK(line_count(hist) == 6);
  }
  SUBCASE("same seed gives byte-identical outputs") {
    for (const char* tag : {"a", "b"}) {
      REQUIRE(run({"train", "--data", ws.data, "--epochs", "3", "--seed", "1", "--out",
                   (dir / (std::string(tag) + ".gnn")).string(), "--history",
                   (dir / (std::string(tag) + ".csv")).string(), "--log-every", "0"})
                  .code == 0);
    }
    CHECK(read_text_file(dir / "a.gnn") == read_text_file(dir / "b.gnn"));
    CHECK(read_text_file(dir / "a.csv") == read_text_file(dir / "b.csv"));
  }
  SUBCASE("flags override the config file, which overrides defaults") {
    write_text_file(dir / "run.cfg", "epochs = 3\nlog_every = 0\n");
    const std::string cfg = (dir / "run.cfg").string();
    const std::string hist = (dir / "p.csv").string();
    const std::string model = (dir / "p.gnn").string();
    REQUIRE(run({"--config", cfg, "train", "--data", ws.data, "--out", model, "--history", hist})
                .code == 0);
    CHECK(line_count(read_text_file(hist)) == 4);
    REQUIRE(run({"train", "--config", cfg, "--data", ws.data, "--epochs", "2", "--out", model,
                 "--history", hist})
                .code == 0);
    CHECK(line_count(read_text_file(hist)) == 3);
    write_text_file(dir / "bad.cfg", "epochs = zero\n");
    CHECK(run({"--config", (dir / "bad.cfg").string(), "train", "--data", ws.data}).code == 2);
    write_text_file(dir / "unknown.cfg", "colour = blue\n");
    CHECK(run({"--config", (dir / "unknown.cfg").string(), "train", "--data", ws.data}).code ==
          2);
  }
  SUBCASE("evaluate") {
    const auto r = run({"evaluate", "--model", ws.model, "--data", ws.data, "--format", "csv",
                        "--csv", (dir / "eval.csv").string()});
    CHECK(r.code == 0);
    CHECK(r.out == read_text_file(dir / "eval.csv"));
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 3);  // header, 1 test sim, mean
    CHECK(rows[0] == "sim_id,mse,rmse,r2");
    CHECK(rows[1].rfind("sim_0005,", 0) == 0);
    CHECK(rows[2].rfind("mean,", 0) == 0);
    CHECK(run({"evaluate", "--model", ws.model, "--data", ws.data, "--split", "all"}).code == 0);
  }
  SUBCASE("predict writes a non-negative wear_pred field") {
    const auto out = dir / "pred.mesh";
    const auto r = run({"predict", "--model", ws.model, "--mesh", ws.data + "/sim_0000.mesh",
                        "--temperature", "1100", "--friction", "0.4", "--out", out.string()});
    CHECK(r.code == 0);
    const SurfaceMesh m = read_mesh_file(out);
    const auto& pred = m.point_fields.at("wear_pred");
    CHECK(pred.size() == 25);
    for (const double v : pred) CHECK(v >= 0.0);
    CHECK(m.params == ProcessParams{1100, 0.4});
    CHECK(m.cell_fields.count("wear") == 1);
  }
  SUBCASE("predict with an incompatible artifact fails at runtime") {
    Prng rng(1);
    ModelOptions opts;
    opts.gnn_dims = {3, 4, 1};
    save_model_file(dir / "narrow.gnn", make_model(ModelKind::kGnn, opts, rng));
    const auto r = run({"predict", "--model", (dir / "narrow.gnn").string(), "--mesh",
                        ws.data + "/sim_0000.mesh", "--temperature", "1100", "--friction", "0.4",
                        "--out", (dir / "x.mesh").string()});
    CHECK(r.code == 1);
    CHECK_FALSE(fs::exists(dir / "x.mesh"));
  }
  SUBCASE("sweep") {
    const auto r = run({"sweep", "--model", ws.model, "--mesh", ws.data + "/sim_0000.mesh",
                        "--t-grid", "900:1200:3", "--mu-grid", "0.1:0.7:3"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 10);
    CHECK(rows[0] == "temperature,friction,mean_wear,max_wear");
    CHECK(rows[1].rfind("900,0.1,", 0) == 0);
    CHECK(rows[2].rfind("900,0.4,", 0) == 0);
    CHECK(rows[4].rfind("1050,0.1,", 0) == 0);
    CHECK(rows[9].rfind("1200,0.7,", 0) == 0);
    CHECK(run({"sweep", "--model", ws.model, "--mesh", ws.data + "/sim_0000.mesh", "--t-grid",
               "900:1200:0", "--mu-grid", "0.1:0.7:3"})
              .code == 2);
  }
  SUBCASE("timeit") {
    const auto r = run({"timeit", "--model", ws.model, "--mesh", ws.data + "/sim_0000.mesh"});
    CHECK(r.code == 0);
    const auto rows = lines(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "median_ms,p95_ms,runs");
    CHECK(rows[1].substr(rows[1].rfind(',') + 1) == "20");
    CHECK(run({"timeit", "--model", ws.model, "--mesh", ws.data + "/sim_0000.mesh", "--runs",
               "5"})
              .code == 2);
  }
  SUBCASE("benchmark") {
    const auto r = run({"benchmark", "--data", ws.data, "--kinds", "gnn", "--epochs", "2",
                        "--log-every", "0"});
    CHECK(r.code == 0);
    CHECK(line_count(r.out) == 2);
    CHECK(r.out.rfind("model,rmse,r2\ngnn,", 0) == 0);
    CHECK(run({"benchmark", "--data", ws.data, "--kinds", "gnn,svm"}).code == 2);
  }
}

TEST_CASE("the executable reports exit codes to the shell") {
  const std::string exe = MESHGNN_EXE;
  auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  CHECK(status("--help") == 0);
  CHECK(status("train") == 2);
  CHECK(status("train --data /nonexistent/dir") == 1);
}
