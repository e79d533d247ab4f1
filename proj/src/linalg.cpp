#include "formation/linalg.hpp"

#include <cassert>
#include <cmath>

namespace formation {

std::vector<double> Matrix::multiply(std::span<const double> v) const {
  assert(v.size() == cols_);
  std::vector<double> out(rows_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += data_[r * cols_ + c] * v[c];
    out[r] = acc;
  }
  return out;
}

double min_singular_value_two_columns(const Matrix& a) {
  assert(a.cols() == 2);
  double g00 = 0.0, g01 = 0.0, g11 = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const double u = a(r, 0);
    const double v = a(r, 1);
    g00 += u * u;
    g01 += u * v;
    g11 += v * v;
  }
  const double mean = 0.5 * (g00 + g11);
  const double diff = 0.5 * (g00 - g11);
  const double lambda_min = mean - std::sqrt(diff * diff + g01 * g01);
  return std::sqrt(std::max(0.0, lambda_min));
}

}  // namespace formation
