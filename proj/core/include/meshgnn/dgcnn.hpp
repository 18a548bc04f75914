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

// DGCNN-style regressor built from EdgeConv layers.
//
// Each EdgeConv layer recomputes a k-nearest-neighbour graph on its input
// features, maps every edge (i, j) to relu([x_i, x_j - x_i] W + b) and keeps
// the channelwise max over i's k edges. Edge layer l maps node width
// node_dims[l] to node_dims[l+1], so its weight is 2*node_dims[l] x
// node_dims[l+1]. A per-point head MLP follows.
struct DgcnnModel {
  std::size_t k = 5;
  std::vector<std::size_t> node_dims{5, 64, 64};
  std::vector<std::size_t> head_dims{64, 32, 1};
  std::vector<AffineLayer> edge_layers;
  std::vector<AffineLayer> head_layers;
  double dropout_p = 0.01;
  FeatureScaler scaler;
};

DgcnnModel make_dgcnn(std::size_t k, std::vector<std::size_t> node_dims,
                      std::vector<std::size_t> head_dims, double dropout_p, Prng& rng);
void validate_model(const DgcnnModel& model);

// Per-edge input feature [x_i, x_j - x_i].
DenseMatrix edge_feature(const DenseMatrix& x, std::size_t i, std::size_t j);

DenseMatrix dgcnn_forward(const DgcnnModel& model, const Graph& graph, Mode mode, Prng& rng);
LossAndGrads loss_and_gradients(const DgcnnModel& model, const Graph& graph, Mode mode,
                                Prng& rng);

std::vector<DenseMatrix*> parameters(DgcnnModel& model);
std::vector<std::string> parameter_names(const DgcnnModel& model);

inline DenseMatrix forward(const DgcnnModel& model, const Graph& graph, Mode mode, Prng& rng) {
  return dgcnn_forward(model, graph, mode, rng);
}
inline FeatureScaler& model_scaler(DgcnnModel& model) { return model.scaler; }
inline const FeatureScaler& model_scaler(const DgcnnModel& model) { return model.scaler; }
inline std::size_t input_width(const DgcnnModel& model) { return model.node_dims.front(); }

}  // namespace meshgnn
