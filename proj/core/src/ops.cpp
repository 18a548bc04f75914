#include "meshgnn/ops.hpp"

#include <cmath>
#include <string>

#include "meshgnn/errors.hpp"

namespace meshgnn {

DenseMatrix relu(const DenseMatrix& x) {
  DenseMatrix out = x;
  for (double& v : out.data()) v = v > 0.0 ? v : 0.0;
  return out;
}

DenseMatrix relu_backward(const DenseMatrix& x, const DenseMatrix& upstream) {
  if (x.rows() != upstream.rows() || x.cols() != upstream.cols()) {
    throw ShapeError("relu_backward: shape mismatch " + x.shape_string() + " vs " +
                     upstream.shape_string());
  }
  DenseMatrix out(x.rows(), x.cols());
  const auto xs = x.data();
  const auto us = upstream.data();
  auto os = out.data();
  for (std::size_t i = 0; i < xs.size(); ++i) os[i] = xs[i] > 0.0 ? us[i] : 0.0;
  return out;
}

void validate_dropout_probability(double p) {
  if (!(p >= 0.0 && p < 1.0)) {
    throw ConfigError("dropout probability must lie in [0, 1), got " + std::to_string(p));
  }
}

DropoutResult dropout(const DenseMatrix& x, double p, Mode mode, Prng& rng) {
  validate_dropout_probability(p);
  if (mode == Mode::kEval || p == 0.0) return {x, DenseMatrix{}};
  const double scale = 1.0 / (1.0 - p);
  DropoutResult r{x, DenseMatrix(x.rows(), x.cols())};
  auto out = r.output.data();
  auto mask = r.mask.data();
  for (std::size_t i = 0; i < out.size(); ++i) {
    mask[i] = rng.next_double() < p ? 0.0 : scale;
    out[i] *= mask[i];
  }
  return r;
}

DenseMatrix dropout_backward(const DenseMatrix& mask, const DenseMatrix& upstream) {
  if (mask.empty()) return upstream;
  return hadamard(upstream, mask);
}

double glorot_limit(std::size_t fan_in, std::size_t fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

DenseMatrix glorot_init(std::size_t fan_in, std::size_t fan_out, Prng& rng) {
  if (fan_in == 0 || fan_out == 0) throw ConfigError("glorot_init: fan_in and fan_out must be >= 1");
  const double limit = glorot_limit(fan_in, fan_out);
  DenseMatrix w(fan_in, fan_out);
  for (double& v : w.data()) v = rng.uniform(-limit, limit);
  return w;
}

}  // namespace meshgnn
