#include "meshgnn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "meshgnn/errors.hpp"

namespace meshgnn {

GradCheckReport finite_difference_check(const std::function<double()>& loss,
                                        std::span<DenseMatrix* const> params,
                                        std::span<const DenseMatrix> analytic, double h) {
  if (!(h > 0.0)) throw ConfigError("finite_difference_check: step must be positive");
  if (params.size() != analytic.size()) {
    throw ShapeError("finite_difference_check: parameter/gradient block count mismatch");
  }
  GradCheckReport report;
  for (std::size_t b = 0; b < params.size(); ++b) {
    auto theta = params[b]->data();
    const auto grad = analytic[b].data();
    if (theta.size() != grad.size()) {
      throw ShapeError("finite_difference_check: block " + std::to_string(b) +
                       " shape mismatch");
    }
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double saved = theta[i];
      theta[i] = saved + h;
      const double up = loss();
      theta[i] = saved - h;
      const double down = loss();
      theta[i] = saved;
      if (!std::isfinite(up) || !std::isfinite(down)) {
        report.finite = false;
        report.max_rel_error = std::numeric_limits<double>::infinity();
        report.worst_block = b;
        report.worst_index = i;
        return report;
      }
      const double numeric = (up - down) / (2.0 * h);
      const double a = grad[i];
      const double rel =
          std::abs(a - numeric) / std::max({1.0, std::abs(a), std::abs(numeric)});
      if (rel > report.max_rel_error) {
        report.max_rel_error = rel;
        report.worst_block = b;
        report.worst_index = i;
        report.analytic = a;
        report.numeric = numeric;
      }
    }
  }
  return report;
}

}  // namespace meshgnn
