#include <benchmark/benchmark.h>

#include <string>

#include "meshgnn/artifact.hpp"
#include "meshgnn/conversion.hpp"
#include "meshgnn/datagen.hpp"
#include "meshgnn/knn.hpp"
#include "meshgnn/matrix.hpp"
#include "meshgnn/pipeline.hpp"
#include "meshgnn/prng.hpp"

namespace {

using namespace meshgnn;

DenseMatrix random_matrix(std::size_t r, std::size_t c, Prng& rng) {
  DenseMatrix m(r, c);
  for (auto& v : m.data()) v = rng.uniform(-1, 1);
  return m;
}

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Prng rng(1);
  const DenseMatrix a = random_matrix(n, 100, rng), b = random_matrix(100, 50, rng);
  for (auto _ : state) benchmark::DoNotOptimize(matmul(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * 100 * 50));
}
BENCHMARK(BM_Matmul)->Arg(256)->Arg(9216);

SurfaceMesh grid_mesh(std::size_t n) {
  GeneratorConfig cfg;
  cfg.nu = cfg.nv = n;
  return generate_simulation(cfg, 0);
}

void BM_MeshToGraph(benchmark::State& state) {
  const SurfaceMesh mesh = grid_mesh(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mesh_to_graph(mesh, std::string("wear")));
}
BENCHMARK(BM_MeshToGraph)->Arg(16)->Arg(96);

void BM_Knn(benchmark::State& state) {
  Prng rng(2);
  const DenseMatrix x = random_matrix(static_cast<std::size_t>(state.range(0)), 5, rng);
  for (auto _ : state) benchmark::DoNotOptimize(knn_graph(x, 5));
}
BENCHMARK(BM_Knn)->Arg(256)->Arg(1024);

// End-to-end eval-mode prediction, conversion included.
void BM_Predict(benchmark::State& state) {
  const auto kind = static_cast<ModelKind>(state.range(0));
  const SurfaceMesh mesh = grid_mesh(static_cast<std::size_t>(state.range(1)));
  Prng rng(3);
  const AnyModel model = make_model(kind, ModelOptions{}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(predict_mesh(model, mesh, mesh.params));
  state.SetLabel(std::string(kind_name(kind)));
}
BENCHMARK(BM_Predict)
    ->Args({0, 16})
    ->Args({0, 96})
    ->Args({1, 16})
    ->Args({2, 16})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
