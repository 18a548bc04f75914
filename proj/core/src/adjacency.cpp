#include "meshgnn/adjacency.hpp"

#include <algorithm>
#include <cmath>

#include "meshgnn/errors.hpp"

namespace meshgnn {

NormalizedAdjacency::NormalizedAdjacency(const Graph& graph) {
  const std::size_t n = graph.num_nodes;
  std::vector<std::vector<std::uint32_t>> nbrs(n);
  for (std::size_t i = 0; i < n; ++i) nbrs[i].push_back(static_cast<std::uint32_t>(i));
  for (const auto& [a, b] : graph.edges) {
    if (a >= n || b >= n) throw ShapeError("edge endpoint out of range");
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
  }
  std::vector<double> degree(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(nbrs[i].begin(), nbrs[i].end());
    degree[i] = static_cast<double>(nbrs[i].size());
  }
  row_ptr_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) row_ptr_[i + 1] = row_ptr_[i] + nbrs[i].size();
  col_.reserve(row_ptr_[n]);
  coef_.reserve(row_ptr_[n]);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto j : nbrs[i]) {
      col_.push_back(j);
      // The product is commutative, so coef(i,j) == coef(j,i) bit for bit.
      coef_.push_back(1.0 / std::sqrt(degree[i] * degree[j]));
    }
  }
}

double NormalizedAdjacency::coefficient(std::size_t i, std::size_t j) const {
  const auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(j));
  if (it == last || *it != j) return 0.0;
  return coef_[static_cast<std::size_t>(it - col_.begin())];
}

DenseMatrix NormalizedAdjacency::apply(const DenseMatrix& h) const {
  if (h.rows() != num_nodes()) {
    throw ShapeError("adjacency of " + std::to_string(num_nodes()) +
                     " nodes applied to " + h.shape_string() + " features");
  }
  const std::size_t f = h.cols();
  DenseMatrix out(h.rows(), f);
  for (std::size_t i = 0; i < num_nodes(); ++i) {
    double* o = out.row(i).data();
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      const double c = coef_[p];
      const double* src = h.row(col_[p]).data();
      for (std::size_t k = 0; k < f; ++k) o[k] += c * src[k];
    }
  }
  return out;
}

DenseMatrix NormalizedAdjacency::to_dense() const {
  DenseMatrix d(num_nodes(), num_nodes());
  for (std::size_t i = 0; i < num_nodes(); ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) d(i, col_[p]) = coef_[p];
  return d;
}

}  // namespace meshgnn
