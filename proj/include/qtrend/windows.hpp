#pragma once

#include <vector>

#include "qtrend/matrix.hpp"

namespace qtrend {

// One supervised sample: `window` consecutive rows predict the row after them.
struct WindowSample {
  Matrix input;   // window x n_features
  Vector target;  // n_features
};

// Slides a length-`window` lookback over the series; yields exactly
// series.rows - window samples in chronological order. Throws when the series
// is not longer than the window.
std::vector<WindowSample> make_windows(const Matrix& series, int window);

}  // namespace qtrend
