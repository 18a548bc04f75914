#include "meshgnn/graph.hpp"

#include <algorithm>
#include <string>

#include "meshgnn/errors.hpp"

namespace meshgnn {

std::vector<Edge> canonical_edges(std::vector<Edge> edges) {
  for (auto& e : edges) {
    if (e.first > e.second) std::swap(e.first, e.second);
  }
  std::erase_if(edges, [](const Edge& e) { return e.first == e.second; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void validate_graph(const Graph& graph) {
  if (graph.node_features.rows() != graph.num_nodes) {
    throw ShapeError("graph '" + graph.name + "': node_features has " +
                     std::to_string(graph.node_features.rows()) + " rows for " +
                     std::to_string(graph.num_nodes) + " nodes");
  }
  if (graph.target && (graph.target->rows() != graph.num_nodes || graph.target->cols() != 1)) {
    throw ShapeError("graph '" + graph.name + "': target shape " +
                     graph.target->shape_string() + " is not " +
                     std::to_string(graph.num_nodes) + "x1");
  }
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const auto [a, b] = graph.edges[i];
    if (a >= b) throw ShapeError("graph '" + graph.name + "': edge " + std::to_string(i) +
                                 " is a self-loop or not stored as i<j");
    if (b >= graph.num_nodes) {
      throw ShapeError("graph '" + graph.name + "': edge endpoint out of range");
    }
    if (i > 0 && !(graph.edges[i - 1] < graph.edges[i])) {
      throw ShapeError("graph '" + graph.name + "': edges not sorted or duplicated");
    }
  }
}

}  // namespace meshgnn
