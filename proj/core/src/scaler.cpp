#include "meshgnn/scaler.hpp"

#include <cmath>
#include <string>

#include "meshgnn/errors.hpp"

namespace meshgnn {

FeatureScaler fit_scaler(std::span<const Graph> graphs) {
  if (graphs.empty()) throw ConfigError("fit_scaler: no training graphs");
  const std::size_t width = graphs.front().node_features.cols();
  std::size_t rows = 0;
  for (const auto& g : graphs) {
    if (g.node_features.cols() != width) {
      throw ShapeError("fit_scaler: graph '" + g.name + "' has " +
                       std::to_string(g.node_features.cols()) + " features, expected " +
                       std::to_string(width));
    }
    rows += g.node_features.rows();
  }
  if (rows == 0) throw ConfigError("fit_scaler: training graphs have no nodes");

  FeatureScaler s{std::vector<double>(width, 0.0), std::vector<double>(width, 1.0)};
  for (std::size_t c = 0; c < width; ++c) {
    const double first = [&] {
      for (const auto& g : graphs)
        if (g.node_features.rows() > 0) return g.node_features(0, c);
      return 0.0;
    }();
    bool constant = true;
    double sum = 0.0;
    for (const auto& g : graphs) {
      for (std::size_t i = 0; i < g.node_features.rows(); ++i) {
        const double v = g.node_features(i, c);
        constant = constant && v == first;
        sum += v;
      }
    }
    if (constant) {
      s.mean[c] = first;
      continue;
    }
    const double mean = sum / static_cast<double>(rows);
    double ss = 0.0;
    for (const auto& g : graphs) {
      for (std::size_t i = 0; i < g.node_features.rows(); ++i) {
        const double d = g.node_features(i, c) - mean;
        ss += d * d;
      }
    }
    const double sd = std::sqrt(ss / static_cast<double>(rows));
    s.mean[c] = mean;
    s.std[c] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

DenseMatrix scale_features(const FeatureScaler& scaler, const DenseMatrix& features) {
  if (features.cols() != scaler.width()) {
    throw ShapeError("scaler fitted on " + std::to_string(scaler.width()) +
                     " features cannot scale " + features.shape_string() + " input");
  }
  DenseMatrix out = features;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    auto r = out.row(i);
    for (std::size_t c = 0; c < r.size(); ++c) r[c] = (r[c] - scaler.mean[c]) / scaler.std[c];
  }
  return out;
}

Graph apply_scaler(const FeatureScaler& scaler, const Graph& graph) {
  if (graph.features_scaled) {
    throw ConfigError("graph '" + graph.name + "' features are already scaled");
  }
  Graph out = graph;
  out.node_features = scale_features(scaler, graph.node_features);
  out.features_scaled = true;
  return out;
}

}  // namespace meshgnn
