#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "meshgnn/graph.hpp"
#include "meshgnn/matrix.hpp"

namespace meshgnn {

/// Symmetrically normalized adjacency with self-loops,
/// D^-1/2 (A + I) D^-1/2, stored in compressed-row form.
///
/// Column indices within a row are ascending and include the diagonal.
/// The operator is symmetric, so it is its own transpose in backward passes.
class NormalizedAdjacency {
 public:
  explicit NormalizedAdjacency(const Graph& graph);

  std::size_t num_nodes() const noexcept { return row_ptr_.size() - 1; }
  std::size_t nnz() const noexcept { return col_.size(); }

  // Coefficient at (i, j); 0 when i and j are not adjacent.
  double coefficient(std::size_t i, std::size_t j) const;

  // Sparse product with an N x F matrix.
  DenseMatrix apply(const DenseMatrix& h) const;

  DenseMatrix to_dense() const;

 private:
  std::vector<std::size_t> row_ptr_;
  std::vector<std::uint32_t> col_;
  std::vector<double> coef_;
};

inline NormalizedAdjacency normalized_adjacency(const Graph& graph) {
  return NormalizedAdjacency(graph);
}

}  // namespace meshgnn
