#include "meshgnn/layers.hpp"

#include <string>

#include "meshgnn/errors.hpp"
#include "meshgnn/ops.hpp"

namespace meshgnn {

AffineLayer make_affine(std::size_t in_dim, std::size_t out_dim, Prng& rng) {
  return {glorot_init(in_dim, out_dim, rng), DenseMatrix(1, out_dim)};
}

DenseMatrix affine_forward(const AffineLayer& layer, const DenseMatrix& x, std::size_t index) {
  if (x.cols() != layer.in_dim()) {
    throw ShapeError("layer " + std::to_string(index) + ": input " + x.shape_string() +
                     " does not match weight " + layer.weight.shape_string());
  }
  DenseMatrix y = matmul(x, layer.weight);
  add_row_inplace(y, layer.bias);
  return y;
}

AffineGrads affine_backward(const AffineLayer& layer, const DenseMatrix& x,
                            const DenseMatrix& upstream, bool need_input_grad) {
  AffineGrads g{matmul_at_b(x, upstream), column_sums(upstream), {}};
  if (need_input_grad) g.input = matmul_a_bt(upstream, layer.weight);
  return g;
}

GcnForward gcn_layer_forward(const GcnLayer& layer, const NormalizedAdjacency& adj,
                             const DenseMatrix& h, std::size_t index) {
  if (h.cols() != layer.in_dim()) {
    throw ShapeError("gcn layer " + std::to_string(index) + ": input " + h.shape_string() +
                     " does not match weight " + layer.weight.shape_string());
  }
  GcnForward f;
  f.aggregated = adj.apply(h);
  f.output = affine_forward(layer, f.aggregated, index);
  return f;
}

AffineGrads gcn_layer_backward(const GcnLayer& layer, const NormalizedAdjacency& adj,
                               const DenseMatrix& aggregated, const DenseMatrix& upstream,
                               bool need_input_grad) {
  AffineGrads g = affine_backward(layer, aggregated, upstream, need_input_grad);
  if (need_input_grad) g.input = adj.apply(g.input);
  return g;
}

double mse_loss(const DenseMatrix& prediction, const DenseMatrix& target, DenseMatrix* grad) {
  if (prediction.rows() != target.rows() || prediction.cols() != target.cols()) {
    throw ShapeError("mse_loss: prediction " + prediction.shape_string() + " vs target " +
                     target.shape_string());
  }
  const auto p = prediction.data();
  const auto t = target.data();
  const double n = static_cast<double>(p.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - t[i];
    sum += d * d;
  }
  if (grad != nullptr) {
    *grad = DenseMatrix(prediction.rows(), prediction.cols());
    auto g = grad->data();
    for (std::size_t i = 0; i < p.size(); ++i) g[i] = 2.0 * (p[i] - t[i]) / n;
  }
  return sum / n;
}

void check_layer_dims(std::span<const AffineLayer> layers, std::span<const std::size_t> dims,
                      const std::string& what) {
  if (dims.size() < 2 || layers.size() != dims.size() - 1) {
    throw ShapeError(what + ": " + std::to_string(layers.size()) + " layers for " +
                     std::to_string(dims.size()) + " declared widths");
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const auto& l = layers[i];
    if (l.weight.rows() != dims[i] || l.weight.cols() != dims[i + 1] || l.bias.rows() != 1 ||
        l.bias.cols() != dims[i + 1]) {
      throw ShapeError(what + " layer " + std::to_string(i) + ": weight " +
                       l.weight.shape_string() + " / bias " + l.bias.shape_string() +
                       " inconsistent with widths " + std::to_string(dims[i]) + "->" +
                       std::to_string(dims[i + 1]));
    }
  }
}

}  // namespace meshgnn
