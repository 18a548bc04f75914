#include "meshgnn/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "meshgnn/conversion.hpp"
#include "meshgnn/errors.hpp"

namespace meshgnn {

std::vector<double> predict_mesh(const AnyModel& model, const SurfaceMesh& mesh,
                                 const ProcessParams& params) {
  validate_params(params);
  SurfaceMesh query = mesh;
  query.params = params;
  const Graph g = mesh_to_graph(query);
  const DenseMatrix pred = predict(model, g);
  return {pred.data().begin(), pred.data().end()};
}

std::vector<double> linear_grid(double first, double last, std::size_t count) {
  if (count == 0) throw ConfigError("grid must contain at least one point");
  std::vector<double> values;
  values.reserve(count);
  if (count == 1) return {first};
  for (std::size_t i = 0; i < count; ++i) {
    if (i + 1 == count) {
      values.push_back(last);
    } else {
      values.push_back(first + (last - first) * static_cast<double>(i) /
                                   static_cast<double>(count - 1));
    }
  }
  return values;
}

std::vector<SweepRow> sweep(const AnyModel& model, const SurfaceMesh& mesh,
                            const std::vector<double>& temperatures,
                            const std::vector<double>& frictions) {
  if (temperatures.empty() || frictions.empty()) throw ConfigError("sweep grid is empty");
  std::vector<SweepRow> rows;
  rows.reserve(temperatures.size() * frictions.size());
  for (const double t : temperatures) {
    for (const double mu : frictions) {
      const auto wear = predict_mesh(model, mesh, {t, mu});
      SweepRow r{t, mu, 0.0, 0.0};
      for (const double w : wear) r.mean_wear += w;
      if (!wear.empty()) {
        r.mean_wear /= static_cast<double>(wear.size());
        r.max_wear = *std::max_element(wear.begin(), wear.end());
      }
      rows.push_back(r);
    }
  }
  return rows;
}

LatencyReport time_predictions(const AnyModel& model, const SurfaceMesh& mesh,
                               const ProcessParams& params, std::size_t runs) {
  if (runs == 0) throw ConfigError("timing needs at least one run");
  std::vector<double> ms;
  ms.reserve(runs);
  for (std::size_t r = 0; r < runs; ++r) {
    const auto start = std::chrono::steady_clock::now();
    const auto wear = predict_mesh(model, mesh, params);
    const auto stop = std::chrono::steady_clock::now();
    if (wear.size() != mesh.points.size()) throw Error("prediction size mismatch");
    ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  std::sort(ms.begin(), ms.end());
  LatencyReport rep;
  rep.runs = runs;
  const std::size_t mid = runs / 2;
  rep.median_ms = runs % 2 == 1 ? ms[mid] : 0.5 * (ms[mid - 1] + ms[mid]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(runs)));
  rep.p95_ms = ms[std::max<std::size_t>(rank, 1) - 1];
  return rep;
}

}  // namespace meshgnn
