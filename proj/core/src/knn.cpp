#include "meshgnn/knn.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "meshgnn/errors.hpp"

namespace meshgnn {

std::vector<std::vector<std::uint32_t>> knn_graph(const DenseMatrix& features, std::size_t k) {
  const std::size_t n = features.rows();
  if (k == 0 || k >= n) {
    throw ConfigError("knn_graph: k must satisfy 1 <= k < N (k=" + std::to_string(k) +
                      ", N=" + std::to_string(n) + ")");
  }
  const std::size_t f = features.cols();
  std::vector<std::vector<std::uint32_t>> out(n);
  std::vector<std::pair<double, std::uint32_t>> cand;
  cand.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    cand.clear();
    const double* xi = features.row(i).data();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double* xj = features.row(j).data();
      double d2 = 0.0;
      for (std::size_t c = 0; c < f; ++c) {
        const double d = xi[c] - xj[c];
        d2 += d * d;
      }
      cand.emplace_back(d2, static_cast<std::uint32_t>(j));
    }
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end());
    out[i].reserve(k);
    for (std::size_t r = 0; r < k; ++r) out[i].push_back(cand[r].second);
  }
  return out;
}

}  // namespace meshgnn
