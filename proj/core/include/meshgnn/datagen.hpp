#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "meshgnn/dataset.hpp"
#include "meshgnn/mesh.hpp"

namespace meshgnn {

// Die surface variant: lower (bulges up) or upper (bulges down).
enum class Die { kLdd, kUdd };

struct GeneratorConfig {
  std::size_t nu = 16;
  std::size_t nv = 16;
  std::size_t n_sims = 40;
  double train_fraction = 0.75;
  double t_min = 900.0;  // kelvin
  double t_max = 1250.0;
  double mu_min = 0.1;
  double mu_max = 0.7;
  std::uint64_t seed = 7;
  Die die = Die::kLdd;
};

// Throws ConfigError: nu, nv >= 2; 0 < train_fraction < 1; ranges ordered
// with positive temperature and non-negative friction.
void validate_generator_config(const GeneratorConfig& config);

// nu x nv grid over [-1, 1]^2 with z = +-0.2 sin(pi x) sin(pi y) and
// (nu-1)(nv-1) quads. Point (i, j) has index j*nu + i.
SurfaceMesh generate_mesh(const GeneratorConfig& config);

// Synthetic wear field (N/m):
//   50 mu (1 + sin(pi x) sin(pi y)) + 30 ((T - 900) / 350) exp(-2 (x^2 + y^2))
double wear_oracle(double x, double y, double temperature, double friction);

// Process parameters of simulation `index`; depends only on seed and index.
ProcessParams sample_params(const GeneratorConfig& config, std::size_t index);

// Mesh with sampled params and the "wear" cell field evaluated at centroids.
SurfaceMesh generate_simulation(const GeneratorConfig& config, std::size_t index);

// Number of training simulations: ceil(train_fraction * n_sims).
std::size_t train_count(const GeneratorConfig& config);

std::string sim_filename(std::size_t index);

struct DatasetSummary {
  std::vector<ManifestEntry> entries;
  std::vector<ProcessParams> params;
  std::size_t n_train = 0;
  std::size_t n_test = 0;
};

// Writes n_sims mesh files plus the manifest into out_dir (created if
// needed). Throws IoError naming the path on failure.
DatasetSummary generate_dataset(const GeneratorConfig& config,
                                const std::filesystem::path& out_dir);

}  // namespace meshgnn
