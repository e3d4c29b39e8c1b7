#pragma once

#include <span>

#include "qtrend/lstm.hpp"
#include "qtrend/windows.hpp"

namespace qtrend {

// Loss and gradient of one full batch. The gradient is the SUM of per-sample
// gradients (gradient of the total loss); the reported loss is the per-sample
// mean. Summation is defined blockwise: samples are grouped into fixed blocks
// of kBatchBlock, each block accumulates in sample order, and block partials
// combine in block order. Fixing the grouping makes the serial and OpenMP
// paths produce identical bits for any thread count.
inline constexpr int kBatchBlock = 8;

struct BatchResult {
  double mean_loss = 0.0;
  LstmGradients gradient;  // summed over samples
};

// Plain serial implementation, kept as the reference the parallel kernel is
// tested against.
BatchResult batch_loss_gradient_serial(const LstmParameters& params,
                                       std::span<const WindowSample> samples);

// Same contract, OpenMP-parallel over blocks. Falls back to the serial path
// when built without OpenMP.
BatchResult batch_loss_gradient(const LstmParameters& params,
                                std::span<const WindowSample> samples);

}  // namespace qtrend
