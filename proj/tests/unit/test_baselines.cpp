#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "meshgnn/artifact.hpp"
#include "meshgnn/dgcnn.hpp"
#include "meshgnn/errors.hpp"
#include "meshgnn/gradcheck.hpp"
#include "meshgnn/knn.hpp"
#include "meshgnn/pointnet.hpp"
#include "support/fixtures.hpp"

using namespace meshgnn;
using Neighbours = std::vector<std::vector<std::uint32_t>>;

TEST_CASE("knn examples") {
  CHECK(knn_graph(DenseMatrix{{0}, {1}, {3}}, 1) == Neighbours{{1}, {0}, {1}});
  CHECK(knn_graph(DenseMatrix{{0}, {1}, {3}}, 2) == Neighbours{{1, 2}, {0, 2}, {1, 0}});
  // Duplicates tie toward the lower index.
  CHECK(knn_graph(DenseMatrix{{5}, {5}, {5}, {0}}, 1) == Neighbours{{1}, {0}, {0}, {0}});
  CHECK_THROWS_AS(knn_graph(DenseMatrix{{0}, {1}}, 2), ConfigError);
}

TEST_CASE("knn matches the brute-force oracle, ties included") {
  Prng rng(40);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = 2 + rng.next_u64() % 199;
    const std::size_t f = 1 + rng.next_u64() % 4;
    DenseMatrix x = testing::random_matrix(n, f, rng);
    if (t % 2 == 0) {
      // Integer lattice coordinates produce many exact distance ties.
      for (auto& v : x.data()) v = static_cast<double>(rng.next_u64() % 4);
    }
    const std::size_t k = 1 + rng.next_u64() % std::min<std::size_t>(n - 1, 8);
    CHECK(knn_graph(x, k) == testing::brute_force_knn(x, k));
  }
}

TEST_CASE("edge feature construction") {
  const DenseMatrix x{{1}, {4}};
  CHECK(edge_feature(x, 0, 1) == DenseMatrix{{1, 3}});
  CHECK(edge_feature(x, 1, 0) == DenseMatrix{{4, -3}});
}

TEST_CASE("global max pooling") {
  CHECK(column_max(DenseMatrix{{1, 5}, {3, 2}}) == DenseMatrix{{3, 5}});
}

TEST_CASE("baseline shapes and defaults") {
  Prng rng(41);
  const PointNetModel pn = make_pointnet({5, 64, 128, 256}, {512, 128, 1}, 0.01, rng);
  CHECK(pn.point_layers.size() == 3);
  CHECK(pn.head_layers.size() == 2);
  CHECK(pn.head_layers[0].weight.rows() == 512);
  CHECK_THROWS_AS(make_pointnet({5, 64}, {100, 1}, 0.01, rng), ConfigError);

  const DgcnnModel dg = make_dgcnn(5, {5, 64, 64}, {64, 32, 1}, 0.01, rng);
  CHECK(dg.edge_layers.size() == 2);
  CHECK(dg.edge_layers[0].weight.rows() == 10);
  CHECK(dg.edge_layers[1].weight.rows() == 128);
  CHECK_THROWS_AS(make_dgcnn(0, {5, 64, 64}, {64, 32, 1}, 0.01, rng), ConfigError);

  const Graph small = testing::random_graph(4, 5, rng);
  CHECK_THROWS_AS(dgcnn_forward(dg, small, Mode::kEval, rng), ConfigError);
  const Graph narrow = testing::random_graph(8, 3, rng);
  CHECK_THROWS_AS(pointnet_forward(pn, narrow, Mode::kEval, rng), ShapeError);
}

TEST_CASE_TEMPLATE("baseline contracts", Model, PointNetModel, DgcnnModel) {
  Prng rng(42);
  Model model;
  if constexpr (std::is_same_v<Model, PointNetModel>) {
    model = make_pointnet({5, 64, 128, 256}, {512, 128, 1}, 0.01, rng);
  } else {
    model = make_dgcnn(5, {5, 64, 64}, {64, 32, 1}, 0.01, rng);
  }
  const Graph g = testing::random_graph(20, 5, rng);

  SUBCASE("zero weights give zero predictions") {
    for (auto* p : parameters(model)) p->fill(0.0);
    CHECK(forward(model, g, Mode::kEval, rng) == DenseMatrix(20, 1));
  }
  SUBCASE("non-negative predictions") {
    for (int t = 0; t < 20; ++t) {
      for (auto* p : parameters(model))
        for (auto& v : p->data()) v = rng.uniform(-0.5, 0.5);
      const DenseMatrix out = forward(model, g, Mode::kTrain, rng);
      for (const double v : out.data()) CHECK(v >= 0.0);
    }
  }
  SUBCASE("permutation equivariance") {
    const DenseMatrix base = forward(model, g, Mode::kEval, rng);
    for (int t = 0; t < 10; ++t) {
      const auto perm = testing::random_permutation(20, rng);
      const DenseMatrix out = forward(model, testing::permute_graph(g, perm), Mode::kEval, rng);
      CHECK(testing::max_abs_diff(out, testing::permute_rows(base, perm)) <= 1e-9);
    }
  }
  SUBCASE("mesh connectivity is ignored") {
    Graph rewired = g;
    rewired.edges = {{0, 19}, {3, 4}};
    CHECK(forward(model, rewired, Mode::kEval, rng) == forward(model, g, Mode::kEval, rng));
  }
  SUBCASE("gradients match central differences") {
    // Narrow widths keep the parameter count, and so the number of loss
    // evaluations, small.
    if constexpr (std::is_same_v<Model, PointNetModel>) {
      model = make_pointnet({5, 12, 16}, {32, 8, 1}, 0.0, rng);
    } else {
      model = make_dgcnn(3, {5, 12, 12}, {12, 8, 1}, 0.0, rng);
    }
    model.head_layers.back().bias.fill(1.0);
    for (const std::size_t n : {7, 10}) {
      const Graph small = testing::random_graph(n, 5, rng);
      const auto lg = loss_and_gradients(model, small, Mode::kTrain, rng);
      const auto params = parameters(model);
      auto loss = [&] { return loss_and_gradients(model, small, Mode::kEval, rng).loss; };
      const auto report = finite_difference_check(loss, params, lg.grads);
      CHECK(report.passes(1e-5));
    }
  }
}

TEST_CASE("baseline training") {
  const double k = 4.0;
  GeneratorConfig gc;
  gc.nu = gc.nv = 4;
  gc.n_sims = 8;
  Dataset ds = testing::synthetic_dataset(gc);
  for (auto* split : {&ds.train, &ds.test})
    for (auto& g : *split) g.target = DenseMatrix(g.num_nodes, 1, k);
  for (const ModelKind kind : {ModelKind::kPointNet, ModelKind::kDgcnn}) {
    CAPTURE(kind_name(kind));
    TrainConfig cfg;  // default epoch cap
    const TrainedModel a = train_baseline(kind, ds, cfg);
    const auto& test = a.history.test_mse;
    CHECK(*std::min_element(test.begin(), test.end()) < 0.01 * k * k);

    cfg.epochs = 10;
    const TrainedModel b = train_baseline(kind, ds, cfg);
    const TrainedModel c = train_baseline(kind, ds, cfg);
    CHECK(b.history.train_mse == c.history.train_mse);
    CHECK(b.history.test_mse == c.history.test_mse);
  }
  CHECK_THROWS_AS(train_baseline(ModelKind::kGnn, ds, TrainConfig{}), ConfigError);
}

TEST_CASE("early stopping with patience 0 stops after the first non-improving epoch") {
  GeneratorConfig gc;
  gc.nu = gc.nv = 5;
  gc.n_sims = 4;
  const Dataset ds = testing::synthetic_dataset(gc);
  TrainConfig cfg;
  cfg.epochs = 400;
  cfg.lr = 0.05;  // large enough that the test loss soon stops improving
  cfg.early_stopping = EarlyStopping{0, 0.0};
  const TrainedModel tm = train_baseline(ModelKind::kPointNet, ds, cfg);
  const auto& test = tm.history.test_mse;
  REQUIRE(test.size() >= 2);
  REQUIRE(test.size() < 400);
  // Every epoch before the last improved on its predecessor; the last did not.
  for (std::size_t e = 1; e + 1 < test.size(); ++e) CHECK(test[e] < test[e - 1]);
  CHECK(test.back() >= test[test.size() - 2]);
}

TEST_CASE("early stopping restores the best weights") {
  GeneratorConfig gc;
  gc.nu = gc.nv = 5;
  gc.n_sims = 4;
  const Dataset ds = testing::synthetic_dataset(gc);
  TrainConfig cfg;
  cfg.epochs = 300;
  cfg.lr = 0.05;
  cfg.early_stopping = EarlyStopping{3, 0.0};
  const TrainedModel tm = train_baseline(ModelKind::kPointNet, ds, cfg);
  const auto& test = tm.history.test_mse;
  const double best = *std::min_element(test.begin(), test.end());
  double restored = 0.0;
  for (const auto& g : ds.test) {
    const DenseMatrix p = predict(tm.model, g);
    restored += mse_loss(p, *g.target, nullptr);
  }
  restored /= static_cast<double>(ds.test.size());
  CHECK(restored == doctest::Approx(best).epsilon(1e-12));
}
