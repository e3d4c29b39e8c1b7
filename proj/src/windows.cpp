#include "qtrend/windows.hpp"

#include <stdexcept>
#include <string>

namespace qtrend {

std::vector<WindowSample> make_windows(const Matrix& series, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (series.rows <= window)
    throw std::invalid_argument("need more than window=" + std::to_string(window) +
                                " rows, got " + std::to_string(series.rows));
  std::vector<WindowSample> samples;
  samples.reserve(static_cast<size_t>(series.rows - window));
  for (int i = 0; i + window < series.rows; ++i) {
    WindowSample s;
    s.input = Matrix(window, series.cols);
    for (int t = 0; t < window; ++t)
      for (int c = 0; c < series.cols; ++c) s.input(t, c) = series(i + t, c);
    s.target.assign(series.row(i + window).begin(), series.row(i + window).end());
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace qtrend
