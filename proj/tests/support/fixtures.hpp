#pragma once

// Shared fixtures and brute-force oracles for the test binaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <unistd.h>

#include "meshgnn/conversion.hpp"
#include "meshgnn/datagen.hpp"
#include "meshgnn/dataset.hpp"
#include "meshgnn/graph.hpp"
#include "meshgnn/matrix.hpp"
#include "meshgnn/mesh.hpp"
#include "meshgnn/prng.hpp"

namespace meshgnn::testing {

inline DenseMatrix random_matrix(std::size_t rows, std::size_t cols, Prng& rng,
                                 double lo = -1.0, double hi = 1.0) {
  DenseMatrix m(rows, cols);
  for (auto& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

// Connected random graph: a path plus a few random chords.
inline Graph random_graph(std::size_t n, std::size_t width, Prng& rng, bool with_target = true) {
  Graph g;
  g.num_nodes = n;
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  for (std::size_t e = 0; e < n; ++e) {
    const auto a = static_cast<std::uint32_t>(rng.next_u64() % n);
    const auto b = static_cast<std::uint32_t>(rng.next_u64() % n);
    edges.emplace_back(a, b);
  }
  g.edges = canonical_edges(std::move(edges));
  g.node_features = random_matrix(n, width, rng);
  if (with_target) g.target = random_matrix(n, 1, rng, 0.5, 3.0);
  return g;
}

// perm[new] = old
inline std::vector<std::uint32_t> random_permutation(std::size_t n, Prng& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(p[i - 1], p[rng.next_u64() % i]);
  }
  return p;
}

inline DenseMatrix permute_rows(const DenseMatrix& m, const std::vector<std::uint32_t>& perm) {
  DenseMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < perm.size(); ++r) {
    const auto src = m.row(perm[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

inline Graph permute_graph(const Graph& g, const std::vector<std::uint32_t>& perm) {
  std::vector<std::uint32_t> inverse(perm.size());
  for (std::size_t r = 0; r < perm.size(); ++r) inverse[perm[r]] = static_cast<std::uint32_t>(r);
  Graph out = g;
  std::vector<Edge> edges;
  for (const auto& [a, b] : g.edges) edges.emplace_back(inverse[a], inverse[b]);
  out.edges = canonical_edges(std::move(edges));
  out.node_features = permute_rows(g.node_features, perm);
  if (g.target) out.target = permute_rows(*g.target, perm);
  return out;
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

// Membership average by scanning every (point, cell) pair.
inline std::vector<double> brute_force_point_average(const SurfaceMesh& mesh,
                                                     const std::vector<double>& values) {
  std::vector<double> out(mesh.points.size(), 0.0);
  for (std::size_t p = 0; p < mesh.points.size(); ++p) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t c = 0; c < mesh.cells.size(); ++c) {
      for (const auto v : mesh.cells[c]) {
        if (v == p) {
          sum += values[c];
          ++count;
        }
      }
    }
    out[p] = count == 0 ? 0.0 : sum / static_cast<double>(count);
  }
  return out;
}

// Random mixed triangle/quad mesh with a "wear" cell field. Some points may
// be isolated.
inline SurfaceMesh random_mesh(Prng& rng, std::size_t max_cells = 100) {
  SurfaceMesh mesh;
  const std::size_t n_points = 4 + rng.next_u64() % 60;
  const std::size_t n_cells = 1 + rng.next_u64() % max_cells;
  for (std::size_t p = 0; p < n_points; ++p) {
    mesh.points.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
  }
  std::vector<double> wear;
  for (std::size_t c = 0; c < n_cells; ++c) {
    const std::size_t arity = rng.next_u64() % 2 == 0 ? 3 : 4;
    std::vector<std::uint32_t> pool(n_points);
    std::iota(pool.begin(), pool.end(), 0u);
    for (std::size_t i = 0; i < arity; ++i) {
      std::swap(pool[i], pool[i + rng.next_u64() % (n_points - i)]);
    }
    mesh.cells.push_back(arity == 3 ? Cell::triangle(pool[0], pool[1], pool[2])
                                    : Cell::quad(pool[0], pool[1], pool[2], pool[3]));
    wear.push_back(rng.uniform(0.0, 100.0));
  }
  mesh.cell_fields["wear"] = std::move(wear);
  mesh.params = {rng.uniform(900, 1250), rng.uniform(0.1, 0.7)};
  return mesh;
}

// Brute-force O(N^2) neighbour oracle: full sort of (distance, index).
inline std::vector<std::vector<std::uint32_t>> brute_force_knn(const DenseMatrix& x,
                                                               std::size_t k) {
  std::vector<std::vector<std::uint32_t>> out(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::vector<std::pair<double, std::uint32_t>> cand;
    for (std::size_t j = 0; j < x.rows(); ++j) {
      if (j == i) continue;
      double d2 = 0.0;
      for (std::size_t c = 0; c < x.cols(); ++c) {
        const double d = x(i, c) - x(j, c);
        d2 += d * d;
      }
      cand.emplace_back(d2, static_cast<std::uint32_t>(j));
    }
    std::sort(cand.begin(), cand.end());
    for (std::size_t r = 0; r < k; ++r) out[i].push_back(cand[r].second);
  }
  return out;
}

// In-memory equivalent of `generate` followed by load_dataset.
inline Dataset synthetic_dataset(const GeneratorConfig& config) {
  Dataset ds;
  const std::size_t n_train = train_count(config);
  for (std::size_t s = 0; s < config.n_sims; ++s) {
    Graph g = mesh_to_graph(generate_simulation(config, s), std::string("wear"));
    g.name = "sim_" + std::to_string(s);
    (s < n_train ? ds.train : ds.test).push_back(std::move(g));
  }
  return ds;
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("meshgnn_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace meshgnn::testing
