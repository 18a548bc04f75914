#include "meshgnn/adam.hpp"

#include <cmath>

#include "meshgnn/errors.hpp"

namespace meshgnn {

namespace {

std::string block_name(std::span<const std::string> names, std::size_t i) {
  if (i < names.size()) return names[i];
  return "parameter block " + std::to_string(i);
}

}  // namespace

void adam_step(std::span<DenseMatrix* const> params, std::span<const DenseMatrix> grads,
               AdamState& state, std::span<const std::string> names) {
  if (params.size() != grads.size()) {
    throw ShapeError("adam_step: " + std::to_string(params.size()) + " parameter blocks but " +
                     std::to_string(grads.size()) + " gradient blocks");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const DenseMatrix& p = *params[i];
    const DenseMatrix& g = grads[i];
    if (p.rows() != g.rows() || p.cols() != g.cols()) {
      throw ShapeError("adam_step: gradient shape " + g.shape_string() + " does not match " +
                       block_name(names, i) + " shape " + p.shape_string());
    }
    if (!all_finite(g)) throw TrainingError("non-finite gradient in " + block_name(names, i));
  }
  if (state.m.empty() && state.v.empty()) {
    for (auto* p : params) {
      state.m.emplace_back(p->rows(), p->cols());
      state.v.emplace_back(p->rows(), p->cols());
    }
  }
  if (state.m.size() != params.size() || state.v.size() != params.size()) {
    throw ShapeError("adam_step: optimizer state does not match the parameter set");
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (state.m[i].rows() != params[i]->rows() || state.m[i].cols() != params[i]->cols()) {
      throw ShapeError("adam_step: moment shape mismatch for " + block_name(names, i));
    }
  }

  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double c1 = 1.0 - std::pow(state.beta1, t);
  const double c2 = 1.0 - std::pow(state.beta2, t);
  const double b1 = state.beta1, b2 = state.beta2;
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto theta = params[i]->data();
    const auto g = grads[i].data();
    auto m = state.m[i].data();
    auto v = state.v[i].data();
    for (std::size_t j = 0; j < theta.size(); ++j) {
      m[j] = b1 * m[j] + (1.0 - b1) * g[j];
      v[j] = b2 * v[j] + (1.0 - b2) * g[j] * g[j];
      const double m_hat = m[j] / c1;
      const double v_hat = v[j] / c2;
      theta[j] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
    }
  }
}

}  // namespace meshgnn
