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

// PointNet-style per-point regressor. Ignores graph edges entirely.
//
// A shared per-point MLP (point_dims) produces local features; their
// columnwise max over all points is the global feature, which is appended
// to every point's local feature before the head MLP (head_dims). The head
// input width is therefore 2 * point_dims.back().
struct PointNetModel {
  std::vector<std::size_t> point_dims{5, 64, 128, 256};
  std::vector<std::size_t> head_dims{512, 128, 1};
  std::vector<AffineLayer> point_layers;
  std::vector<AffineLayer> head_layers;
  double dropout_p = 0.01;
  FeatureScaler scaler;
};

PointNetModel make_pointnet(std::vector<std::size_t> point_dims,
                            std::vector<std::size_t> head_dims, double dropout_p, Prng& rng);
void validate_model(const PointNetModel& model);

DenseMatrix pointnet_forward(const PointNetModel& model, const Graph& graph, Mode mode,
                             Prng& rng);
LossAndGrads loss_and_gradients(const PointNetModel& model, const Graph& graph, Mode mode,
                                Prng& rng);

std::vector<DenseMatrix*> parameters(PointNetModel& model);
std::vector<std::string> parameter_names(const PointNetModel& model);

inline DenseMatrix forward(const PointNetModel& model, const Graph& graph, Mode mode,
                           Prng& rng) {
  return pointnet_forward(model, graph, mode, rng);
}
inline FeatureScaler& model_scaler(PointNetModel& model) { return model.scaler; }
inline const FeatureScaler& model_scaler(const PointNetModel& model) { return model.scaler; }
inline std::size_t input_width(const PointNetModel& model) { return model.point_dims.front(); }

}  // namespace meshgnn
