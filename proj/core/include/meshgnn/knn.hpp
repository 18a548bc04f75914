#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "meshgnn/matrix.hpp"

namespace meshgnn {

// For every row of `features`, the indices of its k nearest other rows by
// Euclidean distance, nearest first; equal distances resolve to the lower
// index. Throws ConfigError unless 1 <= k < N.
std::vector<std::vector<std::uint32_t>> knn_graph(const DenseMatrix& features, std::size_t k);

}  // namespace meshgnn
