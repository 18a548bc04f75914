#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "meshgnn/matrix.hpp"

namespace meshgnn {

struct GradCheckReport {
  double max_rel_error = 0.0;
  std::size_t worst_block = 0;
  std::size_t worst_index = 0;
  double analytic = 0.0;
  double numeric = 0.0;
  // False when the loss turned non-finite at some perturbed point.
  bool finite = true;

  bool passes(double tolerance) const { return finite && max_rel_error <= tolerance; }
};

// Compares `analytic` against central differences of `loss`, perturbing
// each entry of `params` in place by +-h and restoring it afterwards.
// Relative error is |a - n| / max(1, |a|, |n|).
GradCheckReport finite_difference_check(const std::function<double()>& loss,
                                        std::span<DenseMatrix* const> params,
                                        std::span<const DenseMatrix> analytic,
                                        double h = 1e-6);

}  // namespace meshgnn
