#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace formation {

// Dense row-major matrix. Only the small shapes this library needs (incidence
// matrices, stacked Jacobians); no BLAS, no views.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  [[nodiscard]] std::vector<double> multiply(std::span<const double> v) const;

 private:
  std::size_t rows_{0};
  std::size_t cols_{0};
  std::vector<double> data_;
};

// Smallest singular value of a matrix with exactly two columns, via the 2x2
// Gram matrix in closed form.
double min_singular_value_two_columns(const Matrix& a);

}  // namespace formation
