#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "meshgnn/matrix.hpp"

namespace meshgnn {

using Edge = std::pair<std::uint32_t, std::uint32_t>;

/// Learning-side view of one simulation.
///
/// `edges` holds each undirected pair once with first < second, sorted.
/// `target` (N x 1, wear in N/m) is present for labelled graphs.
struct Graph {
  std::size_t num_nodes = 0;
  std::vector<Edge> edges;
  DenseMatrix node_features;
  std::optional<DenseMatrix> target;
  // Set once a FeatureScaler has been applied to node_features.
  bool features_scaled = false;
  std::string name;
};

// Throws ShapeError on self-loops, duplicate or unordered pairs, endpoints
// out of range, or feature/target row counts that differ from num_nodes.
void validate_graph(const Graph& graph);

// Sorts and deduplicates undirected edges into canonical (i < j) form.
// Self-loops are dropped.
std::vector<Edge> canonical_edges(std::vector<Edge> edges);

}  // namespace meshgnn
