#include "meshgnn/mesh_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "meshgnn/errors.hpp"

namespace meshgnn {

namespace {

using nlohmann::json;

const json& require_key(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing required key '" + std::string(key) + "'");
  }
  return *it;
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(where + ": non-finite number");
  return d;
}

std::uint32_t index_at(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected a vertex index");
  if (v.is_number_unsigned()) {
    const auto u = v.get<std::uint64_t>();
    if (u > std::numeric_limits<std::uint32_t>::max()) {
      throw ParseError(where + ": index out of range");
    }
    return static_cast<std::uint32_t>(u);
  }
  throw ParseError(where + ": index out of range (negative)");
}

FieldMap parse_fields(const json& doc, const char* key) {
  FieldMap fields;
  auto it = doc.find(key);
  if (it == doc.end()) return fields;
  if (!it->is_object()) throw ParseError(std::string(key) + ": expected an object");
  for (const auto& [name, arr] : it->items()) {
    const std::string where = std::string(key) + "." + name;
    if (!arr.is_array()) throw ParseError(where + ": expected an array");
    std::vector<double> values;
    values.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
      values.push_back(number_at(arr[i], where + "[" + std::to_string(i) + "]"));
    }
    fields.emplace(name, std::move(values));
  }
  return fields;
}

json fields_to_json(const FieldMap& fields) {
  json out = json::object();
  for (const auto& [name, values] : fields) out[name] = values;
  return out;
}

}  // namespace

SurfaceMesh parse_mesh(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("mesh document is not well-formed: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("mesh document must be an object");

  SurfaceMesh mesh;
  const json& points = require_key(doc, "points", "mesh");
  if (!points.is_array()) throw ParseError("points: expected an array");
  mesh.points.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string where = "points[" + std::to_string(i) + "]";
    const json& p = points[i];
    if (!p.is_array() || p.size() != 3) throw ParseError(where + ": expected [x, y, z]");
    mesh.points.push_back({number_at(p[0], where + "[0]"), number_at(p[1], where + "[1]"),
                           number_at(p[2], where + "[2]")});
  }

  const json& cells = require_key(doc, "cells", "mesh");
  if (!cells.is_array()) throw ParseError("cells: expected an array");
  mesh.cells.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const std::string where = "cells[" + std::to_string(c) + "]";
    const json& cell = cells[c];
    if (!cell.is_array() || (cell.size() != 3 && cell.size() != 4)) {
      throw ParseError(where + ": expected 3 or 4 vertex indices");
    }
    Cell out;
    out.arity = static_cast<std::uint8_t>(cell.size());
    for (std::size_t k = 0; k < cell.size(); ++k) {
      out.v[k] = index_at(cell[k], where + "[" + std::to_string(k) + "]");
    }
    mesh.cells.push_back(out);
  }

  mesh.cell_fields = parse_fields(doc, "cell_fields");
  mesh.point_fields = parse_fields(doc, "point_fields");

  const json& params = require_key(doc, "params", "mesh");
  if (!params.is_object()) throw ParseError("params: expected an object");
  mesh.params.temperature =
      number_at(require_key(params, "temperature", "params"), "params.temperature");
  mesh.params.friction = number_at(require_key(params, "friction", "params"), "params.friction");

  validate_mesh(mesh);
  return mesh;
}

std::string write_mesh(const SurfaceMesh& mesh) {
  json doc = json::object();
  json points = json::array();
  for (const auto& p : mesh.points) points.push_back({p[0], p[1], p[2]});
  doc["points"] = std::move(points);
  json cells = json::array();
  for (const auto& c : mesh.cells) cells.push_back(std::vector<std::uint32_t>(c.begin(), c.end()));
  doc["cells"] = std::move(cells);
  doc["cell_fields"] = fields_to_json(mesh.cell_fields);
  doc["point_fields"] = fields_to_json(mesh.point_fields);
  doc["params"] = {{"temperature", mesh.params.temperature}, {"friction", mesh.params.friction}};
  return doc.dump() + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

SurfaceMesh read_mesh_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return parse_mesh(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_mesh_file(const std::filesystem::path& path, const SurfaceMesh& mesh) {
  write_text_file(path, write_mesh(mesh));
}

}  // namespace meshgnn
