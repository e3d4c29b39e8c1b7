#pragma once

#include <cstdint>
#include <vector>

#include "qtrend/matrix.hpp"
#include "qtrend/rng.hpp"

namespace qtrend {

struct LstmDims {
  int input = 0;
  int hidden = 0;
  int output = 0;

  bool operator==(const LstmDims&) const = default;

  // 4 * hidden * (input + hidden + 1) + output * (hidden + 1)
  int parameter_count() const {
    return 4 * hidden * (input + hidden + 1) + output * (hidden + 1);
  }
};

struct GateParams {
  Matrix w;  // hidden x input
  Matrix u;  // hidden x hidden
  Vector b;  // hidden

  bool operator==(const GateParams&) const = default;
};

// Single cell:
//   i = sigmoid(W_i x + U_i h + b_i)      f = sigmoid(W_f x + U_f h + b_f)
//   g = tanh(W_g x + U_g h + b_g)         o = sigmoid(W_o x + U_o h + b_o)
//   c = f*c_prev + i*g                    h = o*tanh(c)
// plus the affine readout  prediction = V h_L + c_out.
struct LstmParameters {
  LstmDims dims;
  GateParams input_gate, forget_gate, cell_gate, output_gate;
  Matrix proj;       // output x hidden
  Vector proj_bias;  // output

  bool operator==(const LstmParameters&) const = default;
};

// Gradients share the parameter layout exactly.
using LstmGradients = LstmParameters;

LstmParameters zero_parameters(const LstmDims& dims);

// Weights uniform in [-1/sqrt(hidden), 1/sqrt(hidden)]; forget bias 1, other
// biases 0. Same seed, same bits.
LstmParameters init_parameters(const LstmDims& dims, SplitMix64& rng);

// Canonical flat order: W_i,U_i,b_i, W_f,U_f,b_f, W_g,U_g,b_g, W_o,U_o,b_o, V, c.
// Used by the optimizer, the checkpoint format, and the finite-difference probe.
std::vector<double*> parameter_view(LstmParameters& p);
std::vector<const double*> parameter_view(const LstmParameters& p);

struct StepCache {
  Vector x, h_prev, c_prev;
  Vector i, f, g, o;
  Vector c, h;
};

// One timestep; cache carries everything backward() needs.
void lstm_step(const LstmParameters& params, std::span<const double> x,
               std::span<const double> h_prev, std::span<const double> c_prev, StepCache& cache);

struct ForwardResult {
  Vector prediction;
  std::vector<StepCache> caches;  // one per timestep
};

// Runs the cell over the rows of `sequence` from zero state and projects the
// final hidden state. Throws on empty input or width mismatch.
ForwardResult forward(const LstmParameters& params, const Matrix& sequence);

// Mean squared error over output dims.
double mse_loss(std::span<const double> prediction, std::span<const double> target);

// Exact gradient of mse_loss(forward(sequence), target) w.r.t. every
// parameter, backpropagated through all timesteps.
LstmGradients backward(const LstmParameters& params, const std::vector<StepCache>& caches,
                       std::span<const double> prediction, std::span<const double> target);

// Central differences (loss(p+eps) - loss(p-eps)) / (2 eps) per parameter.
// Test oracle: touches only forward() and mse_loss().
LstmGradients finite_difference_gradients(const LstmParameters& params, const Matrix& sequence,
                                          std::span<const double> target, double eps);

}  // namespace qtrend
