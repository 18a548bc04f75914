#include "meshgnn/mesh.hpp"

#include <cmath>
#include <string>

#include "meshgnn/errors.hpp"

namespace meshgnn {

namespace {

void validate_field_map(const FieldMap& fields, std::size_t expected, const char* kind,
                        const char* owner) {
  for (const auto& [name, values] : fields) {
    if (values.size() != expected) {
      throw ParseError(std::string(kind) + "." + name + ": field length " +
                       std::to_string(values.size()) + " does not match " +
                       std::to_string(expected) + " " + owner);
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!std::isfinite(values[i])) {
        throw ParseError(std::string(kind) + "." + name + "[" + std::to_string(i) +
                         "]: non-finite number");
      }
    }
  }
}

}  // namespace

void validate_params(const ProcessParams& params) {
  if (!std::isfinite(params.temperature) || !(params.temperature > 0.0)) {
    throw ParseError("params.temperature: must be finite and > 0");
  }
  if (!std::isfinite(params.friction) || !(params.friction >= 0.0)) {
    throw ParseError("params.friction: must be finite and >= 0");
  }
}

void validate_mesh(const SurfaceMesh& mesh) {
  const std::size_t n = mesh.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      if (!std::isfinite(mesh.points[i][k])) {
        throw ParseError("points[" + std::to_string(i) + "][" + std::to_string(k) +
                         "]: non-finite number");
      }
    }
  }
  for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
    const Cell& cell = mesh.cells[c];
    const std::string where = "cells[" + std::to_string(c) + "]";
    if (cell.arity != 3 && cell.arity != 4) {
      throw ParseError(where + ": cell must have 3 or 4 vertices");
    }
    for (std::size_t k = 0; k < cell.size(); ++k) {
      if (cell[k] >= n) {
        throw ParseError(where + "[" + std::to_string(k) + "]: index out of range (" +
                         std::to_string(cell[k]) + " >= " + std::to_string(n) + " points)");
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (cell[j] == cell[k]) throw ParseError(where + ": repeated vertex index");
      }
    }
  }
  validate_field_map(mesh.cell_fields, mesh.cells.size(), "cell_fields", "cells");
  validate_field_map(mesh.point_fields, n, "point_fields", "points");
  validate_params(mesh.params);
}

}  // namespace meshgnn
