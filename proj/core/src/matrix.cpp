#include "efx/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace efx {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("Matrix: data size does not match shape");
  }
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  double worst = 0.0;
  auto fa = a.flat();
  auto fb = b.flat();
  for (std::size_t t = 0; t < fa.size(); ++t) {
    worst = std::max(worst, std::abs(fa[t] - fb[t]));
  }
  return worst;
}

}  // namespace efx
