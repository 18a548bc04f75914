#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "meshgnn/graph.hpp"
#include "meshgnn/mesh.hpp"

namespace meshgnn {

// Point value = arithmetic mean of `field_name` over every cell that
// contains the point. Points in no cell get 0 and, when `warnings` is
// given, a message is appended for each of them.
std::vector<double> cell_to_point_average(const SurfaceMesh& mesh, std::string_view field_name,
                                          std::vector<std::string>* warnings = nullptr);

// Undirected boundary edges of every cell: triangles give 3, quads their 4
// perimeter edges. Canonical form (i < j, sorted, unique).
std::vector<Edge> mesh_edges(const SurfaceMesh& mesh);

// Column names understood by the feature assembler: "x", "y", "z",
// "temperature", "friction", or the name of any cell/point field.
std::vector<std::string> default_feature_columns();

// Converts a mesh into a graph. Node features follow `columns` (default
// [x, y, z, temperature, friction]; process parameters are broadcast to every
// node). When `target_field` is given it is looked up as a cell field first
// (averaged onto points) and then as a point field.
Graph mesh_to_graph(const SurfaceMesh& mesh,
                    const std::optional<std::string>& target_field = std::nullopt,
                    const std::vector<std::string>& columns = default_feature_columns(),
                    std::vector<std::string>* warnings = nullptr);

// Point-valued field by name: cell fields are averaged, point fields copied.
std::vector<double> point_values(const SurfaceMesh& mesh, std::string_view field_name,
                                 std::vector<std::string>* warnings = nullptr);

}  // namespace meshgnn
