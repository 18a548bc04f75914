#include "meshgnn/conversion.hpp"

#include <string>

#include "meshgnn/errors.hpp"

namespace meshgnn {

std::vector<double> cell_to_point_average(const SurfaceMesh& mesh, std::string_view field_name,
                                          std::vector<std::string>* warnings) {
  const auto it = mesh.cell_fields.find(std::string(field_name));
  if (it == mesh.cell_fields.end()) {
    throw LookupError("unknown cell field '" + std::string(field_name) + "'");
  }
  const std::vector<double>& values = it->second;
  std::vector<double> sum(mesh.points.size(), 0.0);
  std::vector<std::size_t> count(mesh.points.size(), 0);
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    for (const auto p : mesh.cells[c]) {
      sum[p] += values[c];
      ++count[p];
    }
  }
  for (std::size_t p = 0; p < sum.size(); ++p) {
    if (count[p] == 0) {
      if (warnings != nullptr) {
        warnings->push_back("point " + std::to_string(p) + " belongs to no cell; '" +
                            std::string(field_name) + "' set to 0");
      }
      continue;
    }
    sum[p] /= static_cast<double>(count[p]);
  }
  return sum;
}

std::vector<Edge> mesh_edges(const SurfaceMesh& mesh) {
  std::vector<Edge> edges;
  edges.reserve(mesh.cells.size() * 4);
  for (const Cell& cell : mesh.cells) {
    const std::size_t n = cell.size();
    for (std::size_t k = 0; k < n; ++k) edges.emplace_back(cell[k], cell[(k + 1) % n]);
  }
  return canonical_edges(std::move(edges));
}

std::vector<std::string> default_feature_columns() {
  return {"x", "y", "z", "temperature", "friction"};
}

std::vector<double> point_values(const SurfaceMesh& mesh, std::string_view field_name,
                                 std::vector<std::string>* warnings) {
  const std::string name(field_name);
  if (mesh.cell_fields.contains(name)) return cell_to_point_average(mesh, name, warnings);
  const auto it = mesh.point_fields.find(name);
  if (it == mesh.point_fields.end()) {
    throw LookupError("unknown field '" + name + "' (neither a cell nor a point field)");
  }
  return it->second;
}

Graph mesh_to_graph(const SurfaceMesh& mesh, const std::optional<std::string>& target_field,
                    const std::vector<std::string>& columns,
                    std::vector<std::string>* warnings) {
  const std::size_t n = mesh.points.size();
  Graph g;
  g.num_nodes = n;
  g.edges = mesh_edges(mesh);
  g.node_features = DenseMatrix(n, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const std::string& col = columns[c];
    if (col == "x" || col == "y" || col == "z") {
      const std::size_t axis = static_cast<std::size_t>(col[0] - 'x');
      for (std::size_t i = 0; i < n; ++i) g.node_features(i, c) = mesh.points[i][axis];
    } else if (col == "temperature") {
      for (std::size_t i = 0; i < n; ++i) g.node_features(i, c) = mesh.params.temperature;
    } else if (col == "friction") {
      for (std::size_t i = 0; i < n; ++i) g.node_features(i, c) = mesh.params.friction;
    } else {
      const auto values = point_values(mesh, col, warnings);
      for (std::size_t i = 0; i < n; ++i) g.node_features(i, c) = values[i];
    }
  }
  if (target_field) {
    g.target = DenseMatrix(n, 1, point_values(mesh, *target_field, warnings));
  }
  return g;
}

}  // namespace meshgnn
