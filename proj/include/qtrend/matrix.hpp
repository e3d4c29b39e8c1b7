#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace qtrend {

using Vector = std::vector<double>;

// Row-major dense matrix. Just enough linear algebra for the recurrent cell;
// nothing here allocates inside the training inner loop.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c)) {}

  double& operator()(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
  double operator()(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

  std::span<double> row(int r) { return {data.data() + static_cast<size_t>(r) * cols, static_cast<size_t>(cols)}; }
  std::span<const double> row(int r) const {
    return {data.data() + static_cast<size_t>(r) * cols, static_cast<size_t>(cols)};
  }

  bool operator==(const Matrix&) const = default;
};

// y += M x
void matvec_acc(const Matrix& m, std::span<const double> x, std::span<double> y);

// y += M^T x
void matvec_transpose_acc(const Matrix& m, std::span<const double> x, std::span<double> y);

// M += x y^T
void outer_acc(Matrix& m, std::span<const double> x, std::span<const double> y);

inline void add_acc(std::span<const double> x, std::span<double> y) {
  for (size_t i = 0; i < x.size(); ++i) y[i] += x[i];
}

}  // namespace qtrend
