#pragma once

#include "qtrend/lstm.hpp"

namespace qtrend {

// sqrt of the sum of squares over every gradient component, accumulated in
// canonical parameter order.
double global_norm(const LstmGradients& grad);

// Scales the whole gradient to norm <= clip, then params -= lr * grad.
// Non-finite gradients abort with an error instead of poisoning the model.
void sgd_step(LstmParameters& params, const LstmGradients& grad, double learning_rate,
              double clip);

}  // namespace qtrend
