#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meshgnn/artifact.hpp"
#include "meshgnn/datagen.hpp"
#include "meshgnn/dataset.hpp"
#include "meshgnn/errors.hpp"
#include "meshgnn/mesh_io.hpp"
#include "meshgnn/metrics.hpp"
#include "meshgnn/pipeline.hpp"

namespace meshgnn::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
  return v;
}

std::size_t to_count(const std::string& s, const std::string& what) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ConfigError(what + ": '" + s + "' is not a non-negative integer");
  }
  return v;
}

// "16x16"
std::pair<std::size_t, std::size_t> parse_grid(const std::string& s) {
  const auto parts = split(s, 'x');
  if (parts.size() != 2) throw ConfigError("--grid: expected NUxNV, got '" + s + "'");
  return {to_count(parts[0], "--grid"), to_count(parts[1], "--grid")};
}

// "900:1250"
std::pair<double, double> parse_range(const std::string& s, const std::string& what) {
  const auto parts = split(s, ':');
  if (parts.size() != 2) throw ConfigError(what + ": expected LO:HI, got '" + s + "'");
  return {to_double(parts[0], what), to_double(parts[1], what)};
}

// "a:b:n"
std::vector<double> parse_grid_spec(const std::string& s, const std::string& what) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw ConfigError(what + ": expected FIRST:LAST:COUNT, got '" + s + "'");
  const std::size_t n = to_count(parts[2], what);
  if (n == 0) throw ConfigError(what + ": grid is empty");
  return linear_grid(to_double(parts[0], what), to_double(parts[1], what), n);
}

std::vector<std::size_t> parse_dims(const std::string& s) {
  std::vector<std::size_t> dims;
  for (const auto& p : split(s, ',')) dims.push_back(to_count(p, "--dims"));
  if (dims.size() < 2) throw ConfigError("--dims: need at least two widths");
  return dims;
}

Die parse_die(const std::string& s) {
  if (s == "ldd" || s == "LDD") return Die::kLdd;
  if (s == "udd" || s == "UDD") return Die::kUdd;
  throw ConfigError("--die: expected ldd or udd, got '" + s + "'");
}

std::string history_csv(const LossHistory& h) {
  std::string out = "epoch,train_mse,test_mse\n";
  for (std::size_t e = 0; e < h.epochs(); ++e) {
    out += std::to_string(e + 1) + "," + format_number(h.train_mse[e]) + "," +
           format_number(h.test_mse[e]) + "\n";
  }
  return out;
}

// Flags shared by train and benchmark.
struct TrainFlags {
  std::size_t epochs = 2500;
  double lr = 8e-4;
  std::size_t batch_size = 1;
  std::uint64_t seed = 7;
  double dropout = 0.01;
  std::string dims = "5,50,100,50,50,1";
  std::size_t k = 5;
  std::string early_stopping = "auto";
  std::size_t patience = 100;
  double min_delta = 0.0;
  std::size_t log_every = 100;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--epochs", epochs, "Training epochs")->capture_default_str();
    cmd->add_option("--lr", lr, "Adam learning rate")->capture_default_str();
    cmd->add_option("--batch-size", batch_size, "Simulations per optimizer step (must be 1)")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "PRNG seed")->capture_default_str();
    cmd->add_option("--dropout", dropout, "Dropout probability")->capture_default_str();
    cmd->add_option("--dims", dims, "GNN layer widths, comma separated")->capture_default_str();
    cmd->add_option("--k", k, "DGCNN neighbour count")->capture_default_str();
    cmd->add_option("--early-stopping", early_stopping,
                    "auto (baselines only), on, or off")
        ->check(CLI::IsMember({"auto", "on", "off"}))
        ->capture_default_str();
    cmd->add_option("--patience", patience, "Early-stopping patience in epochs")
        ->capture_default_str();
    cmd->add_option("--min-delta", min_delta, "Early-stopping minimum improvement")
        ->capture_default_str();
    cmd->add_option("--log-every", log_every, "Progress line every N epochs (0 = silent)")
        ->capture_default_str();
  }

  TrainConfig config(ModelKind kind) const {
    TrainConfig c;
    c.epochs = epochs;
    c.lr = lr;
    c.batch_size = batch_size;
    c.seed = seed;
    const bool stop = early_stopping == "on" || (early_stopping == "auto" && kind != ModelKind::kGnn);
    if (stop) c.early_stopping = EarlyStopping{patience, min_delta};
    validate_train_config(c);
    return c;
  }

  ModelOptions options() const {
    ModelOptions o;
    o.gnn_dims = parse_dims(dims);
    o.dropout_p = dropout;
    o.dgcnn_k = k;
    validate_dropout_probability(dropout);
    if (k == 0) throw ConfigError("--k must be >= 1");
    return o;
  }

  EpochCallback progress(std::ostream& err, ModelKind kind) const {
    if (log_every == 0) return {};
    const std::size_t every = log_every;
    const std::string name(kind_name(kind));
    return [&err, every, name](std::size_t epoch, double train, double test) {
      if (epoch == 1 || epoch % every == 0) {
        err << name << " epoch " << epoch << " train_mse " << format_number(train)
            << " test_mse " << format_number(test) << "\n";
      }
    };
  }
};

void require_existing(const fs::path& path, const std::string& what) {
  if (!fs::exists(path)) throw IoError(what + " '" + path.string() + "' does not exist");
}

}  // namespace

std::vector<std::string> config_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    std::replace(key.begin(), key.end(), '_', '-');
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph-neural-network wear surrogate for finite-element surface meshes"};
  app.name("meshgnn");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  // Handled before parsing; registered so it shows up in --help.
  std::string config_path_help;
  app.add_option("--config", config_path_help,
                 "key = value file; explicit flags override its entries");

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic dataset of die meshes");
  std::string gen_out;
  std::uint64_t gen_seed = 7;
  std::size_t gen_n = 40;
  double gen_fraction = 0.75;
  std::string gen_grid = "16x16", gen_die = "ldd", gen_t = "900:1250", gen_mu = "0.1:0.7";
  bool gen_paper = false;
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--seed", gen_seed, "PRNG seed")->capture_default_str();
  gen->add_option("--n-sims", gen_n, "Number of simulations")->capture_default_str();
  gen->add_option("--train-fraction", gen_fraction, "Fraction assigned to train")
      ->capture_default_str();
  gen->add_option("--grid", gen_grid, "Grid resolution NUxNV")->capture_default_str();
  gen->add_option("--die", gen_die, "Surface variant: ldd or udd")->capture_default_str();
  gen->add_option("--t-range", gen_t, "Temperature range LO:HI (K)")->capture_default_str();
  gen->add_option("--mu-range", gen_mu, "Friction range LO:HI")->capture_default_str();
  gen->add_flag("--nodes-like-paper", gen_paper, "Use a 96x96 grid (9216 nodes)");

  // train
  auto* tr = app.add_subcommand("train", "Train a model on a dataset directory");
  std::string tr_data, tr_kind = "gnn", tr_out = "model.gnn", tr_hist = "loss_history.csv";
  TrainFlags tr_flags;
  tr->add_option("--data", tr_data, "Dataset directory (with manifest)")->required();
  tr->add_option("--kind", tr_kind, "gnn, pointnet or dgcnn")
      ->check(CLI::IsMember({"gnn", "pointnet", "dgcnn"}))
      ->capture_default_str();
  tr->add_option("--out", tr_out, "Model artifact path")->capture_default_str();
  tr->add_option("--history", tr_hist, "Loss history CSV path")->capture_default_str();
  tr_flags.add_to(tr);

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Per-simulation MSE/RMSE/R^2 of a trained model");
  std::string ev_model, ev_data, ev_split = "test", ev_csv, ev_format = "table";
  ev->add_option("--model", ev_model, "Model artifact")->required();
  ev->add_option("--data", ev_data, "Dataset directory")->required();
  ev->add_option("--split", ev_split, "test, train or all")
      ->check(CLI::IsMember({"test", "train", "all"}))
      ->capture_default_str();
  ev->add_option("--csv", ev_csv, "Also write the report as CSV to this path");
  ev->add_option("--format", ev_format, "Standard output format: table or csv")
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();

  // predict
  auto* pr = app.add_subcommand("predict", "Predict the wear field on one mesh");
  std::string pr_model, pr_mesh, pr_out;
  double pr_t = 0.0, pr_mu = 0.0;
  pr->add_option("--model", pr_model, "Model artifact")->required();
  pr->add_option("--mesh", pr_mesh, "Input mesh")->required();
  pr->add_option("--temperature", pr_t, "Billet temperature (K)")->required();
  pr->add_option("--friction", pr_mu, "Friction coefficient")->required();
  pr->add_option("--out", pr_out, "Output mesh with point field wear_pred")->required();

  // benchmark
  auto* bm = app.add_subcommand("benchmark", "Train and compare gnn/pointnet/dgcnn");
  std::string bm_data, bm_kinds = "gnn,pointnet,dgcnn", bm_out;
  TrainFlags bm_flags;
  bm->add_option("--data", bm_data, "Dataset directory")->required();
  bm->add_option("--kinds", bm_kinds, "Comma-separated model kinds")->capture_default_str();
  bm->add_option("--out", bm_out, "Also write the table as CSV to this path");
  bm_flags.add_to(bm);

  // sweep
  auto* sw = app.add_subcommand("sweep", "Tabulate predicted wear over a (T, mu) grid");
  std::string sw_model, sw_mesh, sw_t, sw_mu, sw_out;
  sw->add_option("--model", sw_model, "Model artifact")->required();
  sw->add_option("--mesh", sw_mesh, "Base mesh")->required();
  sw->add_option("--t-grid", sw_t, "Temperatures FIRST:LAST:COUNT")->required();
  sw->add_option("--mu-grid", sw_mu, "Frictions FIRST:LAST:COUNT")->required();
  sw->add_option("--out", sw_out, "CSV output path (default: standard output)");

  // timeit
  auto* ti = app.add_subcommand("timeit", "Median/p95 end-to-end prediction latency");
  std::string ti_model, ti_mesh;
  std::size_t ti_runs = 20;
  std::optional<double> ti_t, ti_mu;
  ti->add_option("--model", ti_model, "Model artifact")->required();
  ti->add_option("--mesh", ti_mesh, "Mesh to predict on")->required();
  ti->add_option("--runs", ti_runs, "Number of timed runs (>= 20)")->capture_default_str();
  ti->add_option("--temperature", ti_t, "Override the mesh temperature");
  ti->add_option("--friction", ti_mu, "Override the mesh friction");

  // Config overlay: its entries are placed right after the subcommand so
  // explicit flags, which come later, take precedence.
  std::vector<std::string> args;
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < raw_args.size(); ++i) {
    const std::string& a = raw_args[i];
    if (a == "--config") {
      if (i + 1 >= raw_args.size()) {
        err << "error: --config requires a path\n";
        return kExitUsage;
      }
      config_path = raw_args[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      config_path = a.substr(9);
    } else {
      args.push_back(a);
    }
  }
  if (config_path) {
    std::vector<std::string> extra;
    try {
      extra = config_tokens(read_text_file(*config_path));
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    const auto sub = std::find_if(args.begin(), args.end(),
                                  [](const std::string& a) { return !a.starts_with("-"); });
    const auto at = sub == args.end() ? args.begin() : sub + 1;
    args.insert(at, extra.begin(), extra.end());
  }

  std::vector<const char*> argv{"meshgnn"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      GeneratorConfig gc;
      gc.seed = gen_seed;
      gc.n_sims = gen_n;
      gc.train_fraction = gen_fraction;
      std::tie(gc.nu, gc.nv) = gen_paper ? std::pair<std::size_t, std::size_t>{96, 96}
                                         : parse_grid(gen_grid);
      gc.die = parse_die(gen_die);
      std::tie(gc.t_min, gc.t_max) = parse_range(gen_t, "--t-range");
      std::tie(gc.mu_min, gc.mu_max) = parse_range(gen_mu, "--mu-range");
      validate_generator_config(gc);
      const DatasetSummary s = generate_dataset(gc, gen_out);
      out << "wrote " << s.entries.size() << " simulations (" << gc.nu * gc.nv
          << " nodes each) to " << gen_out << ": " << s.n_train << " train / " << s.n_test
          << " test\n";
      for (std::size_t i = 0; i < s.entries.size(); ++i) {
        out << "  " << s.entries[i].filename << " "
            << (s.entries[i].split == Split::kTrain ? "train" : "test")
            << " T=" << format_number(s.params[i].temperature)
            << " mu=" << format_number(s.params[i].friction) << "\n";
      }
      return kExitOk;
    }

    if (tr->parsed()) {
      const ModelKind kind = parse_kind(tr_kind);
      const TrainConfig config = tr_flags.config(kind);
      const ModelOptions options = tr_flags.options();
      require_existing(tr_data, "dataset directory");
      const Dataset ds = load_dataset(tr_data);
      const TrainedModel tm =
          train_model(kind, ds, config, options, tr_flags.progress(err, kind));
      save_model_file(tr_out, tm.model);
      write_text_file(tr_hist, history_csv(tm.history));
      out << "trained " << kind_name(kind) << " for " << tm.history.epochs()
          << " epochs; final train_mse " << format_number(tm.history.train_mse.back())
          << " test_mse " << format_number(tm.history.test_mse.back()) << "\n"
          << "model: " << tr_out << "\nhistory: " << tr_hist << "\n";
      return kExitOk;
    }

    if (ev->parsed()) {
      const AnyModel model = load_model_file(ev_model);
      const Dataset ds = load_dataset(ev_data);
      std::vector<Graph> graphs;
      if (ev_split != "test") graphs.insert(graphs.end(), ds.train.begin(), ds.train.end());
      if (ev_split != "train") graphs.insert(graphs.end(), ds.test.begin(), ds.test.end());
      if (graphs.empty()) throw ConfigError("selected split '" + ev_split + "' is empty");
      const EvalReport report = evaluate(model, graphs);
      if (!ev_csv.empty()) write_text_file(ev_csv, report_csv(report));
      out << (ev_format == "csv" ? report_csv(report) : report_table(report));
      return kExitOk;
    }

    if (pr->parsed()) {
      const ProcessParams params{pr_t, pr_mu};
      try {
        validate_params(params);
      } catch (const ParseError& e) {
        throw ConfigError(e.what());
      }
      const AnyModel model = load_model_file(pr_model);
      SurfaceMesh mesh = read_mesh_file(pr_mesh);
      const auto wear = predict_mesh(model, mesh, params);
      mesh.params = params;
      mesh.point_fields["wear_pred"] = wear;
      write_mesh_file(pr_out, mesh);
      const double max_w = wear.empty() ? 0.0 : *std::max_element(wear.begin(), wear.end());
      out << "predicted wear on " << wear.size() << " nodes (max " << format_number(max_w)
          << " N/m); wrote " << pr_out << "\n";
      return kExitOk;
    }

    if (bm->parsed()) {
      std::vector<ModelKind> kinds;
      for (const auto& k : split(bm_kinds, ',')) kinds.push_back(parse_kind(k));
      if (kinds.empty()) throw ConfigError("--kinds is empty");
      std::vector<std::pair<TrainConfig, ModelKind>> plans;
      for (const auto kind : kinds) plans.emplace_back(bm_flags.config(kind), kind);
      const ModelOptions options = bm_flags.options();
      require_existing(bm_data, "dataset directory");
      const Dataset ds = load_dataset(bm_data);
      if (ds.test.empty()) throw ConfigError("benchmark needs a non-empty test split");
      std::string csv = "model,rmse,r2\n";
      for (const auto& [config, kind] : plans) {
        const TrainedModel tm =
            train_model(kind, ds, config, options, bm_flags.progress(err, kind));
        const EvalReport rep = evaluate(tm.model, ds.test);
        csv += std::string(kind_name(kind)) + "," + format_number(rep.mean_rmse) + "," +
               format_number(rep.mean_r2) + "\n";
      }
      if (!bm_out.empty()) write_text_file(bm_out, csv);
      out << csv;
      return kExitOk;
    }

    if (sw->parsed()) {
      const auto temps = parse_grid_spec(sw_t, "--t-grid");
      const auto frictions = parse_grid_spec(sw_mu, "--mu-grid");
      const AnyModel model = load_model_file(sw_model);
      const SurfaceMesh mesh = read_mesh_file(sw_mesh);
      std::string csv = "temperature,friction,mean_wear,max_wear\n";
      for (const auto& r : sweep(model, mesh, temps, frictions)) {
        csv += format_number(r.temperature) + "," + format_number(r.friction) + "," +
               format_number(r.mean_wear) + "," + format_number(r.max_wear) + "\n";
      }
      if (sw_out.empty()) {
        out << csv;
      } else {
        write_text_file(sw_out, csv);
        out << "wrote " << temps.size() * frictions.size() << " rows to " << sw_out << "\n";
      }
      return kExitOk;
    }

    if (ti->parsed()) {
      if (ti_runs < 20) throw ConfigError("--runs must be >= 20");
      const AnyModel model = load_model_file(ti_model);
      const SurfaceMesh mesh = read_mesh_file(ti_mesh);
      ProcessParams params = mesh.params;
      if (ti_t) params.temperature = *ti_t;
      if (ti_mu) params.friction = *ti_mu;
      const LatencyReport rep = time_predictions(model, mesh, params, ti_runs);
      out << "median_ms,p95_ms,runs\n"
          << format_number(rep.median_ms) << "," << format_number(rep.p95_ms) << ","
          << rep.runs << "\n";
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace meshgnn::cli
