#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "meshgnn/graph.hpp"
#include "meshgnn/layers.hpp"
#include "meshgnn/ops.hpp"
#include "meshgnn/prng.hpp"
#include "meshgnn/scaler.hpp"

namespace meshgnn {

/// Graph-convolutional wear surrogate.
///
/// Layer l maps dims[l] -> dims[l+1]. Hidden layers are followed by ReLU and
/// dropout; the output layer is followed by a final ReLU so every prediction
/// is non-negative.
struct SurrogateModel {
  std::vector<std::size_t> dims{5, 50, 100, 50, 50, 1};
  std::vector<GcnLayer> layers;
  double dropout_p = 0.01;
  FeatureScaler scaler;
};

// Fresh model: Glorot weights, zero biases, identity scaler of width dims[0].
SurrogateModel make_surrogate(std::vector<std::size_t> dims, double dropout_p, Prng& rng);

// Throws ShapeError/ConfigError when layers, dims, dropout or scaler disagree.
void validate_model(const SurrogateModel& model);

// N x 1 predictions. Graphs whose features are not yet scaled are passed
// through model.scaler first.
DenseMatrix forward(const SurrogateModel& model, const Graph& graph, Mode mode, Prng& rng);

// MSE over the graph's nodes and its gradient for every weight and bias, in
// parameters() order. Throws ConfigError when the graph has no target.
LossAndGrads loss_and_gradients(const SurrogateModel& model, const Graph& graph, Mode mode,
                                Prng& rng);

// Layer 0 weight, layer 0 bias, layer 1 weight, ...
std::vector<DenseMatrix*> parameters(SurrogateModel& model);
std::vector<std::string> parameter_names(const SurrogateModel& model);

inline FeatureScaler& model_scaler(SurrogateModel& model) { return model.scaler; }
inline const FeatureScaler& model_scaler(const SurrogateModel& model) { return model.scaler; }
inline std::size_t input_width(const SurrogateModel& model) { return model.dims.front(); }

// Identity scaler (mean 0, std 1) for `width` features.
FeatureScaler identity_scaler(std::size_t width);

// Returns graph features ready for a model: scaled copy if needed.
DenseMatrix model_inputs(const FeatureScaler& scaler, const Graph& graph,
                         std::size_t expected_width);

}  // namespace meshgnn
