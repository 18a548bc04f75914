#pragma once

#include <span>
#include <vector>

#include "meshgnn/graph.hpp"

namespace meshgnn {

// Per-column standardization fitted on training node features.
struct FeatureScaler {
  std::vector<double> mean;
  std::vector<double> std;  // population std; zero-variance columns get 1

  std::size_t width() const noexcept { return mean.size(); }
  bool operator==(const FeatureScaler&) const = default;
};

// Fits over the row-wise concatenation of every graph's node_features.
// Throws ConfigError on an empty set and ShapeError on differing widths.
FeatureScaler fit_scaler(std::span<const Graph> graphs);

// Returns a copy with features replaced by (x - mean) / std. The target is
// left in physical units.
Graph apply_scaler(const FeatureScaler& scaler, const Graph& graph);

DenseMatrix scale_features(const FeatureScaler& scaler, const DenseMatrix& features);

}  // namespace meshgnn
