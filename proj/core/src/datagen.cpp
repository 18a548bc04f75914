#include "meshgnn/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "meshgnn/errors.hpp"
#include "meshgnn/mesh_io.hpp"
#include "meshgnn/prng.hpp"

namespace meshgnn {

void validate_generator_config(const GeneratorConfig& c) {
  if (c.nu < 2 || c.nv < 2) throw ConfigError("grid resolution must be at least 2x2");
  if (c.n_sims == 0) throw ConfigError("n_sims must be >= 1");
  if (!(c.train_fraction > 0.0 && c.train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0, 1)");
  }
  if (!(c.t_min > 0.0) || !(c.t_min <= c.t_max) || !std::isfinite(c.t_max)) {
    throw ConfigError("temperature range must satisfy 0 < t_min <= t_max");
  }
  if (!(c.mu_min >= 0.0) || !(c.mu_min <= c.mu_max) || !std::isfinite(c.mu_max)) {
    throw ConfigError("friction range must satisfy 0 <= mu_min <= mu_max");
  }
}

SurfaceMesh generate_mesh(const GeneratorConfig& config) {
  validate_generator_config(config);
  const double sign = config.die == Die::kLdd ? 1.0 : -1.0;
  const double pi = std::numbers::pi;
  SurfaceMesh mesh;
  mesh.points.reserve(config.nu * config.nv);
  for (std::size_t j = 0; j < config.nv; ++j) {
    const double y = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(config.nv - 1);
    for (std::size_t i = 0; i < config.nu; ++i) {
      const double x =
          -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(config.nu - 1);
      mesh.points.push_back({x, y, sign * 0.2 * std::sin(pi * x) * std::sin(pi * y)});
    }
  }
  const auto at = [&](std::size_t i, std::size_t j) {
    return static_cast<std::uint32_t>(j * config.nu + i);
  };
  mesh.cells.reserve((config.nu - 1) * (config.nv - 1));
  for (std::size_t j = 0; j + 1 < config.nv; ++j) {
    for (std::size_t i = 0; i + 1 < config.nu; ++i) {
      mesh.cells.push_back(Cell::quad(at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)));
    }
  }
  mesh.params = {config.t_min, config.mu_min};
  return mesh;
}

double wear_oracle(double x, double y, double temperature, double friction) {
  const double pi = std::numbers::pi;
  return 50.0 * friction * (1.0 + std::sin(pi * x) * std::sin(pi * y)) +
         30.0 * ((temperature - 900.0) / 350.0) * std::exp(-2.0 * (x * x + y * y));
}

ProcessParams sample_params(const GeneratorConfig& config, std::size_t index) {
  Prng rng = Prng(config.seed).derive(index);
  ProcessParams p;
  p.temperature = rng.uniform(config.t_min, config.t_max);
  p.friction = rng.uniform(config.mu_min, config.mu_max);
  return p;
}

SurfaceMesh generate_simulation(const GeneratorConfig& config, std::size_t index) {
  SurfaceMesh mesh = generate_mesh(config);
  mesh.params = sample_params(config, index);
  std::vector<double> wear;
  wear.reserve(mesh.cells.size());
  for (const Cell& cell : mesh.cells) {
    double cx = 0.0, cy = 0.0;
    for (const auto p : cell) {
      cx += mesh.points[p][0];
      cy += mesh.points[p][1];
    }
    cx /= static_cast<double>(cell.size());
    cy /= static_cast<double>(cell.size());
    wear.push_back(wear_oracle(cx, cy, mesh.params.temperature, mesh.params.friction));
  }
  mesh.cell_fields.emplace("wear", std::move(wear));
  return mesh;
}

std::size_t train_count(const GeneratorConfig& config) {
  // Guard against 0.7 * 10 == 7.000000000000001 rounding up.
  const double raw = config.train_fraction * static_cast<double>(config.n_sims);
  return static_cast<std::size_t>(std::ceil(raw - 1e-9));
}

std::string sim_filename(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "sim_%04zu.mesh", index);
  return buf;
}

DatasetSummary generate_dataset(const GeneratorConfig& config,
                                const std::filesystem::path& out_dir) {
  validate_generator_config(config);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create directory '" + out_dir.string() + "': " + ec.message());

  DatasetSummary summary;
  summary.n_train = train_count(config);
  summary.n_test = config.n_sims - summary.n_train;
  for (std::size_t s = 0; s < config.n_sims; ++s) {
    const SurfaceMesh mesh = generate_simulation(config, s);
    const std::string name = sim_filename(s);
    write_mesh_file(out_dir / name, mesh);
    summary.entries.push_back({name, s < summary.n_train ? Split::kTrain : Split::kTest});
    summary.params.push_back(mesh.params);
  }
  write_text_file(out_dir / kManifestName, write_manifest(summary.entries));
  return summary;
}

}  // namespace meshgnn
