#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace meshgnn {

/// Row-major dense matrix of doubles.
///
/// Node feature blocks, layer weights and bias rows all use this type. The
/// storage invariant `data().size() == rows() * cols()` always holds.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);
  DenseMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static DenseMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  void fill(double value);

  // "RxC", used in error messages.
  std::string shape_string() const;

  bool operator==(const DenseMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Standard product a * b.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
// a^T * b without materializing the transpose.
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);
// a * b^T.
DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b);

DenseMatrix transpose(const DenseMatrix& a);

// Adds the 1xC row vector `bias` to every row of `m`.
void add_row_inplace(DenseMatrix& m, const DenseMatrix& bias);
// 1xC column sums.
DenseMatrix column_sums(const DenseMatrix& m);
// 1xC columnwise maxima, plus the row that attained each maximum (lowest row
// on ties). Requires at least one row.
DenseMatrix column_max(const DenseMatrix& m, std::vector<std::size_t>* argmax = nullptr);

// In-place a += b (same shape).
void add_inplace(DenseMatrix& a, const DenseMatrix& b);
DenseMatrix hadamard(const DenseMatrix& a, const DenseMatrix& b);

// Horizontal concatenation [a | b]; both must share the row count.
DenseMatrix hconcat(const DenseMatrix& a, const DenseMatrix& b);

bool all_finite(const DenseMatrix& m) noexcept;
// Throws NumericError naming `what` when any entry is NaN/Inf.
void require_finite(const DenseMatrix& m, const std::string& what);

}  // namespace meshgnn
