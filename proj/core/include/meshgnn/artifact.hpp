#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "meshgnn/dataset.hpp"
#include "meshgnn/dgcnn.hpp"
#include "meshgnn/pointnet.hpp"
#include "meshgnn/surrogate.hpp"
#include "meshgnn/trainer.hpp"

namespace meshgnn {

enum class ModelKind { kGnn, kPointNet, kDgcnn };

using AnyModel = std::variant<SurrogateModel, PointNetModel, DgcnnModel>;

std::string_view kind_name(ModelKind kind);
// Accepts "gnn", "pointnet", "dgcnn"; throws ConfigError otherwise.
ModelKind parse_kind(std::string_view name);
ModelKind kind_of(const AnyModel& model);

// Architecture knobs that are not training hyperparameters.
struct ModelOptions {
  std::vector<std::size_t> gnn_dims{5, 50, 100, 50, 50, 1};
  double dropout_p = 0.01;
  std::size_t dgcnn_k = 5;
};

AnyModel make_model(ModelKind kind, const ModelOptions& options, Prng& rng);

struct TrainedModel {
  AnyModel model;
  LossHistory history;
};

// Builds a fresh model from Prng(config.seed) and fits it. The surrogate
// trains without early stopping unless the config asks for it; baselines
// default to early stopping (patience 100, min_delta 0).
TrainedModel train_model(ModelKind kind, const Dataset& dataset, const TrainConfig& config,
                         const ModelOptions& options = {}, const EpochCallback& on_epoch = {});

// Surrogate-only convenience wrapper around train_model.
TrainedModel train(const Dataset& dataset, const TrainConfig& config,
                   const ModelOptions& options = {});
// Baseline wrapper: kind must be kPointNet or kDgcnn.
TrainedModel train_baseline(ModelKind kind, const Dataset& dataset, const TrainConfig& config,
                            const ModelOptions& options = {});

// Eval-mode N x 1 predictions.
DenseMatrix predict(const AnyModel& model, const Graph& graph);
std::size_t input_width(const AnyModel& model);

// Versioned JSON model document; doubles written at round-trip precision.
inline constexpr int kModelFormatVersion = 1;
std::string save_model(const AnyModel& model);
// Throws ParseError for malformed, truncated, wrong-version or
// shape-inconsistent documents; never returns a partial model.
AnyModel load_model(std::string_view text);

void save_model_file(const std::filesystem::path& path, const AnyModel& model);
AnyModel load_model_file(const std::filesystem::path& path);

}  // namespace meshgnn
