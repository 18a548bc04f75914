#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "meshgnn/graph.hpp"

namespace meshgnn {

enum class Split { kTrain, kTest };

struct ManifestEntry {
  std::string filename;
  Split split = Split::kTrain;

  bool operator==(const ManifestEntry&) const = default;
};

// `manifest` file in a dataset directory: one `<filename> <train|test>` line
// per simulation, in generation order.
inline constexpr const char* kManifestName = "manifest";

std::vector<ManifestEntry> parse_manifest(const std::string& text);
std::string write_manifest(const std::vector<ManifestEntry>& entries);
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dir);

// Train/test graphs in manifest order.
struct Dataset {
  std::vector<Graph> train;
  std::vector<Graph> test;
};

// Loads every mesh listed in the manifest and converts it to a graph with
// the default feature columns and `target_field` (if any) as target. Graph
// names are the file stems.
Dataset load_dataset(const std::filesystem::path& dir,
                     const std::optional<std::string>& target_field = std::string("wear"));

}  // namespace meshgnn
