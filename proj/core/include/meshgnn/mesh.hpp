#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace meshgnn {

// Forging process inputs attached to a simulation.
struct ProcessParams {
  double temperature = 0.0;  // kelvin, > 0
  double friction = 0.0;     // >= 0

  bool operator==(const ProcessParams&) const = default;
};

// A surface element: 3 (triangle) or 4 (quad) distinct vertex indices.
struct Cell {
  std::array<std::uint32_t, 4> v{};
  std::uint8_t arity = 3;

  std::size_t size() const noexcept { return arity; }
  std::uint32_t operator[](std::size_t i) const { return v[i]; }
  const std::uint32_t* begin() const noexcept { return v.data(); }
  const std::uint32_t* end() const noexcept { return v.data() + arity; }

  static Cell triangle(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    return Cell{{a, b, c, 0}, 3};
  }
  static Cell quad(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    return Cell{{a, b, c, d}, 4};
  }

  bool operator==(const Cell&) const = default;
};

using Point3 = std::array<double, 3>;
using FieldMap = std::map<std::string, std::vector<double>>;

/// Finite-element surface mesh with per-cell and per-point scalar fields.
struct SurfaceMesh {
  std::vector<Point3> points;
  std::vector<Cell> cells;
  FieldMap cell_fields;
  FieldMap point_fields;
  ProcessParams params;

  bool operator==(const SurfaceMesh&) const = default;
};

// Throws ParseError describing the first violated invariant (index range,
// distinct vertices, field lengths, finiteness, parameter domain).
void validate_mesh(const SurfaceMesh& mesh);
void validate_params(const ProcessParams& params);

}  // namespace meshgnn
