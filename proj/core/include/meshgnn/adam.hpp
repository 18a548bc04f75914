#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "meshgnn/matrix.hpp"

namespace meshgnn {

/// Optimizer moments and hyperparameters for Adam.
///
/// `m` and `v` are lazily shaped to match the parameter set on the first
/// step; after that any shape change is a ShapeError.
struct AdamState {
  std::vector<DenseMatrix> m;
  std::vector<DenseMatrix> v;
  std::uint64_t t = 0;
  double lr = 8e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// One Adam update of every block in `params` using `grads` (same order and
// shapes). A non-finite gradient raises TrainingError naming the block,
// using `names[i]` when provided, and leaves params and state untouched.
void adam_step(std::span<DenseMatrix* const> params, std::span<const DenseMatrix> grads,
               AdamState& state, std::span<const std::string> names = {});

}  // namespace meshgnn
