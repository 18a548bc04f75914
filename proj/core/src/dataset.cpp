#include "meshgnn/dataset.hpp"

#include <sstream>

#include "meshgnn/conversion.hpp"
#include "meshgnn/errors.hpp"
#include "meshgnn/mesh_io.hpp"

namespace meshgnn {

std::vector<ManifestEntry> parse_manifest(const std::string& text) {
  std::vector<ManifestEntry> entries;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string name, split, extra;
    if (!(ls >> name >> split) || (ls >> extra)) {
      throw ParseError("manifest line " + std::to_string(line_no) +
                       ": expected '<filename> <train|test>'");
    }
    if (split == "train") {
      entries.push_back({name, Split::kTrain});
    } else if (split == "test") {
      entries.push_back({name, Split::kTest});
    } else {
      throw ParseError("manifest line " + std::to_string(line_no) + ": unknown split '" +
                       split + "'");
    }
  }
  return entries;
}

std::string write_manifest(const std::vector<ManifestEntry>& entries) {
  std::string out;
  for (const auto& e : entries) {
    out += e.filename;
    out += e.split == Split::kTrain ? " train\n" : " test\n";
  }
  return out;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir) {
  const auto path = dir / kManifestName;
  try {
    return parse_manifest(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Dataset load_dataset(const std::filesystem::path& dir,
                     const std::optional<std::string>& target_field) {
  Dataset ds;
  for (const auto& entry : read_manifest(dir)) {
    const SurfaceMesh mesh = read_mesh_file(dir / entry.filename);
    Graph g = mesh_to_graph(mesh, target_field);
    g.name = std::filesystem::path(entry.filename).stem().string();
    (entry.split == Split::kTrain ? ds.train : ds.test).push_back(std::move(g));
  }
  return ds;
}

}  // namespace meshgnn
