#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "meshgnn/adjacency.hpp"
#include "meshgnn/matrix.hpp"
#include "meshgnn/prng.hpp"

namespace meshgnn {

// y = x W + 1 b, with W in_dim x out_dim and b a 1 x out_dim row.
struct AffineLayer {
  DenseMatrix weight;
  DenseMatrix bias;

  std::size_t in_dim() const noexcept { return weight.rows(); }
  std::size_t out_dim() const noexcept { return weight.cols(); }
  bool operator==(const AffineLayer&) const = default;
};

// A graph convolution is an affine map applied to aggregated features.
using GcnLayer = AffineLayer;

// Glorot-uniform weight, zero bias.
AffineLayer make_affine(std::size_t in_dim, std::size_t out_dim, Prng& rng);

struct AffineGrads {
  DenseMatrix weight;
  DenseMatrix bias;
  DenseMatrix input;  // empty unless requested
};

DenseMatrix affine_forward(const AffineLayer& layer, const DenseMatrix& x, std::size_t index);
AffineGrads affine_backward(const AffineLayer& layer, const DenseMatrix& x,
                            const DenseMatrix& upstream, bool need_input_grad);

struct GcnForward {
  DenseMatrix aggregated;  // Â·H, kept for the weight gradient
  DenseMatrix output;      // Â·H·W + 1·b (pre-activation)
};

GcnForward gcn_layer_forward(const GcnLayer& layer, const NormalizedAdjacency& adj,
                             const DenseMatrix& h, std::size_t index);
// gradW = (Â·H)ᵀ G, gradb = colsum(G), gradH = Â (G Wᵀ).
AffineGrads gcn_layer_backward(const GcnLayer& layer, const NormalizedAdjacency& adj,
                               const DenseMatrix& aggregated, const DenseMatrix& upstream,
                               bool need_input_grad);

// Mean squared error over all entries; writes d(loss)/d(prediction) when
// `grad` is non-null.
double mse_loss(const DenseMatrix& prediction, const DenseMatrix& target, DenseMatrix* grad);

struct LossAndGrads {
  double loss = 0.0;
  std::vector<DenseMatrix> grads;  // same order as the model's parameters()
};

// Checks a layer stack against declared widths; throws ShapeError.
void check_layer_dims(std::span<const AffineLayer> layers, std::span<const std::size_t> dims,
                      const std::string& what);

}  // namespace meshgnn
