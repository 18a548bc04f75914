#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "meshgnn/mesh.hpp"

namespace meshgnn {

// Mesh documents are JSON objects with the keys `points`, `cells`,
// `cell_fields`, `point_fields` and `params`. Numbers are written with the
// shortest representation that round-trips to the same double.

// Parses and validates a mesh document; never repairs input.
SurfaceMesh parse_mesh(std::string_view text);
// Canonical serialization: sorted keys, one trailing newline.
std::string write_mesh(const SurfaceMesh& mesh);

SurfaceMesh read_mesh_file(const std::filesystem::path& path);
void write_mesh_file(const std::filesystem::path& path, const SurfaceMesh& mesh);

// Whole-file helpers shared by the mesh and model readers.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace meshgnn
