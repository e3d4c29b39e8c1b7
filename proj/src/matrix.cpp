#include "qtrend/matrix.hpp"

namespace qtrend {

void matvec_acc(const Matrix& m, std::span<const double> x, std::span<double> y) {
  for (int r = 0; r < m.rows; ++r) {
    const double* row = m.data.data() + static_cast<size_t>(r) * m.cols;
    double acc = 0.0;
    for (int c = 0; c < m.cols; ++c) acc += row[c] * x[static_cast<size_t>(c)];
    y[static_cast<size_t>(r)] += acc;
  }
}

void matvec_transpose_acc(const Matrix& m, std::span<const double> x, std::span<double> y) {
  for (int r = 0; r < m.rows; ++r) {
    const double* row = m.data.data() + static_cast<size_t>(r) * m.cols;
    double xr = x[static_cast<size_t>(r)];
    for (int c = 0; c < m.cols; ++c) y[static_cast<size_t>(c)] += row[c] * xr;
  }
}

void outer_acc(Matrix& m, std::span<const double> x, std::span<const double> y) {
  for (int r = 0; r < m.rows; ++r) {
    double* row = m.data.data() + static_cast<size_t>(r) * m.cols;
    double xr = x[static_cast<size_t>(r)];
    for (int c = 0; c < m.cols; ++c) row[c] += xr * y[static_cast<size_t>(c)];
  }
}

}  // namespace qtrend
