#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "meshgnn/adam.hpp"
#include "meshgnn/dataset.hpp"
#include "meshgnn/errors.hpp"
#include "meshgnn/graph.hpp"
#include "meshgnn/layers.hpp"
#include "meshgnn/ops.hpp"
#include "meshgnn/prng.hpp"
#include "meshgnn/scaler.hpp"

namespace meshgnn {

struct EarlyStopping {
  std::size_t patience = 100;  // non-improving epochs tolerated
  double min_delta = 0.0;      // required test-loss improvement
};

struct TrainConfig {
  std::size_t epochs = 2500;
  double lr = 8e-4;
  std::size_t batch_size = 1;  // one simulation per optimizer step
  std::uint64_t seed = 7;
  std::optional<EarlyStopping> early_stopping;
};

// Per-epoch mean node MSE, (N/m)^2.
struct LossHistory {
  std::vector<double> train_mse;
  std::vector<double> test_mse;

  std::size_t epochs() const noexcept { return train_mse.size(); }
  bool operator==(const LossHistory&) const = default;
};

// Throws ConfigError for epochs == 0, lr <= 0 or batch_size != 1.
void validate_train_config(const TrainConfig& config);

// Called after every epoch with (epoch index from 1, train mse, test mse).
using EpochCallback = std::function<void(std::size_t, double, double)>;

// Mean eval-mode MSE over labelled graphs (0 for an empty set).
template <class Model>
double mean_eval_loss(const Model& model, const std::vector<Graph>& graphs) {
  if (graphs.empty()) return 0.0;
  Prng unused(0);
  double sum = 0.0;
  for (const auto& g : graphs) {
    if (!g.target) throw ConfigError("graph '" + g.name + "' has no target");
    const DenseMatrix pred = forward(model, g, Mode::kEval, unused);
    double s = 0.0;
    for (std::size_t i = 0; i < pred.rows(); ++i) {
      const double d = pred(i, 0) - (*g.target)(i, 0);
      s += d * d;
    }
    sum += s / static_cast<double>(pred.rows());
  }
  return sum / static_cast<double>(graphs.size());
}

/// Trains `model` in place.
///
/// The scaler is fitted on `train` only and stored in the model. Each epoch
/// visits the training graphs in order with one Adam step per graph, then
/// records the mean train and test losses, both in eval mode. With early stopping, training halts once the test loss has failed
/// to improve by more than min_delta for more than `patience` epochs, and
/// the best-scoring weights are restored.
template <class Model>
LossHistory fit(Model& model, const std::vector<Graph>& train, const std::vector<Graph>& test,
                const TrainConfig& config, Prng& rng, const EpochCallback& on_epoch = {}) {
  validate_train_config(config);
  if (train.empty()) throw ConfigError("training set is empty");

  model_scaler(model) = fit_scaler(train);
  auto prepare = [&](const std::vector<Graph>& graphs) {
    std::vector<Graph> out;
    out.reserve(graphs.size());
    for (const auto& g : graphs) {
      if (g.node_features.cols() != input_width(model)) {
        throw ShapeError("graph '" + g.name + "' has " +
                         std::to_string(g.node_features.cols()) +
                         " node features, model expects " + std::to_string(input_width(model)));
      }
      if (!g.target) throw ConfigError("graph '" + g.name + "' has no target");
      out.push_back(apply_scaler(model_scaler(model), g));
    }
    return out;
  };
  const std::vector<Graph> train_set = prepare(train);
  const std::vector<Graph> test_set = prepare(test);

  AdamState adam;
  adam.lr = config.lr;
  const auto names = parameter_names(model);
  LossHistory history;

  double best = std::numeric_limits<double>::infinity();
  std::size_t stale = 0;
  std::optional<Model> best_model;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    for (const auto& g : train_set) {
      LossAndGrads lg = loss_and_gradients(model, g, Mode::kTrain, rng);
      if (!std::isfinite(lg.loss)) {
        throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) +
                            " on graph '" + g.name + "'");
      }
      const auto params = parameters(model);
      adam_step(params, lg.grads, adam, names);
    }
    const double train_mse = mean_eval_loss(model, train_set);
    const double test_mse = mean_eval_loss(model, test_set);
    if (!std::isfinite(test_mse)) {
      throw TrainingError("non-finite test loss at epoch " + std::to_string(epoch));
    }
    history.train_mse.push_back(train_mse);
    history.test_mse.push_back(test_mse);
    if (on_epoch) on_epoch(epoch, train_mse, test_mse);

    if (config.early_stopping && !test_set.empty()) {
      if (test_mse < best - config.early_stopping->min_delta) {
        best = test_mse;
        stale = 0;
        best_model = model;
      } else if (++stale > config.early_stopping->patience) {
        break;
      }
    }
  }
  if (best_model) model = std::move(*best_model);
  return history;
}

}  // namespace meshgnn
