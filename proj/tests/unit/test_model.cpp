#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "meshgnn/adjacency.hpp"
#include "meshgnn/artifact.hpp"
#include "meshgnn/errors.hpp"
#include "meshgnn/gradcheck.hpp"
#include "meshgnn/layers.hpp"
#include "meshgnn/surrogate.hpp"
#include "meshgnn/trainer.hpp"
#include "support/fixtures.hpp"

using namespace meshgnn;

namespace {

Graph path_graph(std::size_t n) {
  Graph g;
  g.num_nodes = n;
  for (std::uint32_t i = 0; i + 1 < n; ++i) g.edges.emplace_back(i, i + 1);
  g.node_features = DenseMatrix(n, 1);
  return g;
}

Graph ring_graph(std::size_t n) {
  Graph g = path_graph(n);
  g.edges.emplace_back(0, static_cast<std::uint32_t>(n - 1));
  g.edges = canonical_edges(g.edges);
  return g;
}

}  // namespace

TEST_CASE("normalized adjacency examples") {
  SUBCASE("single edge") {
    const auto adj = normalized_adjacency(path_graph(2));
    CHECK(adj.to_dense() == DenseMatrix{{0.5, 0.5}, {0.5, 0.5}});
  }
  SUBCASE("path of three") {
    const auto adj = normalized_adjacency(path_graph(3));
    CHECK(std::abs(adj.coefficient(0, 0) - 0.5) <= 1e-12);
    CHECK(std::abs(adj.coefficient(0, 1) - 1.0 / std::sqrt(6.0)) <= 1e-12);
    CHECK(std::abs(adj.coefficient(1, 1) - 1.0 / 3.0) <= 1e-12);
    CHECK(adj.coefficient(0, 2) == 0.0);
    CHECK(adj.nnz() == 7);
  }
  SUBCASE("isolated node") {
    CHECK(normalized_adjacency(path_graph(1)).to_dense() == DenseMatrix{{1.0}});
  }
}

TEST_CASE("normalized adjacency properties") {
  SUBCASE("regular graphs have unit row sums") {
    for (std::size_t n : {3, 5, 12}) {
      const DenseMatrix ones(n, 1, 1.0);
      const DenseMatrix r = normalized_adjacency(ring_graph(n)).apply(ones);
      for (const double v : r.data()) CHECK(std::abs(v - 1.0) <= 1e-12);
    }
  }
  SUBCASE("symmetric on random graphs and apply matches dense product") {
    Prng rng(21);
    for (int t = 0; t < 20; ++t) {
      const Graph g = testing::random_graph(2 + rng.next_u64() % 15, 3, rng);
      const auto adj = normalized_adjacency(g);
      const DenseMatrix d = adj.to_dense();
      for (std::size_t i = 0; i < g.num_nodes; ++i)
        for (std::size_t j = 0; j < g.num_nodes; ++j) CHECK(d(i, j) == d(j, i));
      CHECK(testing::max_abs_diff(adj.apply(g.node_features), matmul(d, g.node_features)) <=
            1e-14);
    }
  }
}

TEST_CASE("gcn layer forward/backward examples") {
  const auto adj = normalized_adjacency(path_graph(2));
  GcnLayer layer{DenseMatrix{{1.0}}, DenseMatrix{{0.0}}};
  const DenseMatrix h{{2}, {4}};
  CHECK(gcn_layer_forward(layer, adj, h, 0).output == DenseMatrix{{3}, {3}});

  GcnLayer zero{DenseMatrix(1, 2), DenseMatrix(1, 2)};
  CHECK(gcn_layer_forward(zero, adj, h, 0).output == DenseMatrix(2, 2));

  const auto fwd = gcn_layer_forward(zero, adj, h, 0);
  const auto grads = gcn_layer_backward(zero, adj, fwd.aggregated, DenseMatrix(2, 2, 1.0), true);
  CHECK(grads.bias == DenseMatrix{{2, 2}});

  GcnLayer wrong{DenseMatrix(3, 1), DenseMatrix(1, 1)};
  try {
    (void)gcn_layer_forward(wrong, adj, h, 4);
    FAIL("expected ShapeError");
  } catch (const ShapeError& e) {
    CHECK(std::string(e.what()).find("4") != std::string::npos);
  }
}

TEST_CASE("mse loss and gradient") {
  DenseMatrix grad;
  CHECK(mse_loss(DenseMatrix{{2}, {2}}, DenseMatrix{{1}, {3}}, &grad) == 1.0);
  CHECK(grad == DenseMatrix{{1}, {-1}});
}

TEST_CASE("surrogate forward contracts") {
  Prng rng(1);
  SurrogateModel model = make_surrogate({5, 50, 100, 50, 50, 1}, 0.01, rng);
  CHECK(model.layers.size() == 5);
  CHECK(model.layers[1].weight.rows() == 50);
  CHECK(model.layers[1].weight.cols() == 100);
  for (const auto& l : model.layers) {
    for (const double b : l.bias.data()) CHECK(b == 0.0);
  }

  const Graph g = testing::random_graph(12, 5, rng);
  SUBCASE("zero weights give zero predictions") {
    for (auto* p : parameters(model)) p->fill(0.0);
    CHECK(forward(model, g, Mode::kEval, rng) == DenseMatrix(12, 1));
  }
  SUBCASE("predictions are non-negative in both modes") {
    for (int t = 0; t < 50; ++t) {
      for (auto* p : parameters(model))
        for (auto& v : p->data()) v = rng.uniform(-1, 1);
      for (const Mode mode : {Mode::kEval, Mode::kTrain}) {
        const DenseMatrix out = forward(model, g, mode, rng);
        for (const double v : out.data()) CHECK(v >= 0.0);
      }
    }
  }
  SUBCASE("feature width mismatch") {
    const Graph bad = testing::random_graph(4, 3, rng);
    CHECK_THROWS_AS(forward(model, bad, Mode::kEval, rng), ShapeError);
  }
  SUBCASE("eval mode ignores the rng") {
    Prng a(1), b(999);
    CHECK(forward(model, g, Mode::kEval, a) == forward(model, g, Mode::kEval, b));
  }
}

TEST_CASE("surrogate loss examples") {
  Prng rng(2);
  SurrogateModel model = make_surrogate({5, 8, 1}, 0.0, rng);
  Graph g = testing::random_graph(6, 5, rng);
  SUBCASE("zero model against a constant target") {
    for (auto* p : parameters(model)) p->fill(0.0);
    g.target = DenseMatrix(6, 1, 3.0);
    CHECK(loss_and_gradients(model, g, Mode::kTrain, rng).loss == doctest::Approx(9.0));
  }
  SUBCASE("exact predictions give zero loss and zero gradients") {
    g.target = forward(model, g, Mode::kEval, rng);
    const auto lg = loss_and_gradients(model, g, Mode::kTrain, rng);
    CHECK(lg.loss == 0.0);
    for (const auto& gr : lg.grads)
      for (const double v : gr.data()) CHECK(v == 0.0);
  }
  SUBCASE("missing target") {
    g.target.reset();
    CHECK_THROWS_AS(loss_and_gradients(model, g, Mode::kTrain, rng), ConfigError);
  }
}

TEST_CASE("surrogate gradients match central differences") {
  Prng rng(3);
  for (const std::size_t n : {6, 10}) {
    SurrogateModel model = make_surrogate({5, 50, 100, 50, 50, 1}, 0.0, rng);
    model.layers.back().bias.fill(1.0);
    const Graph g = testing::random_graph(n, 5, rng);
    const auto lg = loss_and_gradients(model, g, Mode::kTrain, rng);
    const auto params = parameters(model);
    auto loss = [&] { return loss_and_gradients(model, g, Mode::kEval, rng).loss; };
    const auto report = finite_difference_check(loss, params, lg.grads);
    CHECK(report.passes(1e-5));
  }
}

TEST_CASE("surrogate is permutation equivariant") {
  Prng rng(4);
  const SurrogateModel model = make_surrogate({5, 50, 100, 50, 50, 1}, 0.01, rng);
  const Graph g = testing::random_graph(30, 5, rng);
  const DenseMatrix base = forward(model, g, Mode::kEval, rng);
  for (int t = 0; t < 10; ++t) {
    const auto perm = testing::random_permutation(30, rng);
    const DenseMatrix out = forward(model, testing::permute_graph(g, perm), Mode::kEval, rng);
    CHECK(testing::max_abs_diff(out, testing::permute_rows(base, perm)) <= 1e-9);
  }
}

TEST_CASE("train config validation") {
  TrainConfig c;
  CHECK_NOTHROW(validate_train_config(c));
  c.epochs = 0;
  CHECK_THROWS_AS(validate_train_config(c), ConfigError);
  c = {};
  c.lr = 0.0;
  CHECK_THROWS_AS(validate_train_config(c), ConfigError);
  c = {};
  c.batch_size = 2;
  CHECK_THROWS_AS(validate_train_config(c), ConfigError);
  CHECK(TrainConfig{}.epochs == 2500);
  CHECK(TrainConfig{}.lr == 8e-4);
  CHECK(TrainConfig{}.batch_size == 1);
  CHECK_FALSE(TrainConfig{}.early_stopping.has_value());
}

TEST_CASE("training") {
  GeneratorConfig gc;
  gc.nu = gc.nv = 5;
  gc.n_sims = 8;
  const Dataset ds = testing::synthetic_dataset(gc);
  TrainConfig cfg;
  cfg.epochs = 15;
  cfg.seed = 1;

  SUBCASE("same seed gives identical histories and weights") {
    const TrainedModel a = train(ds, cfg);
    const TrainedModel b = train(ds, cfg);
    CHECK(a.history.train_mse == b.history.train_mse);
    CHECK(a.history.test_mse == b.history.test_mse);
    CHECK(save_model(a.model) == save_model(b.model));
    CHECK(a.history.epochs() == 15);
  }
  SUBCASE("scaler is fitted on the training graphs only") {
    const TrainedModel a = train(ds, cfg);
    const Dataset train_only{ds.train, {}};
    CHECK(fit_scaler(ds.train) == std::get<SurrogateModel>(a.model).scaler);
    CHECK(std::get<SurrogateModel>(train(train_only, cfg).model).scaler ==
          std::get<SurrogateModel>(a.model).scaler);
  }
  SUBCASE("empty training set") {
    CHECK_THROWS_AS(train(Dataset{}, cfg), ConfigError);
  }
  SUBCASE("epoch callback sees every epoch") {
    std::size_t calls = 0;
    train_model(ModelKind::kGnn, ds, cfg, {}, [&](std::size_t e, double, double) {
      CHECK(e == ++calls);
    });
    CHECK(calls == 15);
  }
}

TEST_CASE("constant targets are learned within 200 epochs") {
  Prng rng(5);
  const double k = 4.0;
  Dataset ds;
  for (int i = 0; i < 4; ++i) {
    Graph g = testing::random_graph(8, 5, rng);
    g.target = DenseMatrix(8, 1, k);
    (i < 3 ? ds.train : ds.test).push_back(g);
  }
  TrainConfig cfg;
  cfg.epochs = 200;
  const TrainedModel tm = train(ds, cfg);
  CHECK(tm.history.train_mse.back() < 0.01 * k * k);
}

TEST_CASE("model artifacts") {
  Prng rng(6);
  const Graph g = testing::random_graph(9, 5, rng);
  ModelOptions opts;
  for (const ModelKind kind : {ModelKind::kGnn, ModelKind::kPointNet, ModelKind::kDgcnn}) {
    CAPTURE(kind_name(kind));
    AnyModel m = make_model(kind, opts, rng);
    const std::string text = save_model(m);
    const AnyModel back = load_model(text);
    CHECK(kind_of(back) == kind);
    CHECK(predict(back, g) == predict(m, g));
    CHECK(save_model(back) == text);
    CHECK_THROWS_AS(load_model(text.substr(0, text.size() / 2)), ParseError);
  }

  const std::string text = save_model(make_model(ModelKind::kGnn, opts, rng));
  SUBCASE("dims disagree with the layer count") {
    auto doc = nlohmann::json::parse(text);
    doc["dims"] = {5, 50};
    CHECK_THROWS_AS(load_model(doc.dump()), ParseError);
  }
  SUBCASE("version mismatch") {
    auto doc = nlohmann::json::parse(text);
    doc["version"] = kModelFormatVersion + 1;
    CHECK_THROWS_AS(load_model(doc.dump()), ParseError);
  }
  SUBCASE("unknown kind") {
    auto doc = nlohmann::json::parse(text);
    doc["kind"] = "transformer";
    CHECK_THROWS_AS(load_model(doc.dump()), ParseError);
  }
  SUBCASE("kind names") {
    CHECK(parse_kind("pointnet") == ModelKind::kPointNet);
    CHECK(kind_name(ModelKind::kDgcnn) == "dgcnn");
    CHECK_THROWS_AS(parse_kind("mlp"), ConfigError);
  }
}
