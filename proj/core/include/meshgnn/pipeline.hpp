#pragma once

#include <cstddef>
#include <vector>

#include "meshgnn/artifact.hpp"
#include "meshgnn/mesh.hpp"

namespace meshgnn {

// End-to-end inference on one mesh under `params`: mesh -> graph (default
// feature columns) -> eval-mode forward. One value per mesh point.
std::vector<double> predict_mesh(const AnyModel& model, const SurfaceMesh& mesh,
                                 const ProcessParams& params);

// Inclusive linear grid of `count` values from `first` to `last`
// (count == 1 yields {first}). Throws ConfigError for count == 0.
std::vector<double> linear_grid(double first, double last, std::size_t count);

struct SweepRow {
  double temperature = 0.0;
  double friction = 0.0;
  double mean_wear = 0.0;
  double max_wear = 0.0;
};

// Row-major over temperatures (outer) and frictions (inner).
std::vector<SweepRow> sweep(const AnyModel& model, const SurfaceMesh& mesh,
                            const std::vector<double>& temperatures,
                            const std::vector<double>& frictions);

struct LatencyReport {
  double median_ms = 0.0;
  double p95_ms = 0.0;  // nearest-rank
  std::size_t runs = 0;
};

// Wall time of `runs` calls to predict_mesh. Throws ConfigError if runs < 1.
LatencyReport time_predictions(const AnyModel& model, const SurfaceMesh& mesh,
                               const ProcessParams& params, std::size_t runs);

}  // namespace meshgnn
