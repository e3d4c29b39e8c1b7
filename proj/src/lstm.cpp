#include "qtrend/lstm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qtrend {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void check_dims(const LstmDims& d) {
  if (d.input < 1 || d.hidden < 1 || d.output < 1)
    throw std::invalid_argument("lstm dims must be positive, got input=" +
                                std::to_string(d.input) + " hidden=" + std::to_string(d.hidden) +
                                " output=" + std::to_string(d.output));
}

GateParams zero_gate(const LstmDims& d) {
  GateParams g;
  g.w = Matrix(d.hidden, d.input);
  g.u = Matrix(d.hidden, d.hidden);
  g.b = Vector(static_cast<size_t>(d.hidden), 0.0);
  return g;
}

void fill_uniform(Matrix& m, SplitMix64& rng, double s) {
  for (double& v : m.data) v = rng.uniform(-s, s);
}

// Per-gate pre-activation a = W x + U h_prev + b, then the nonlinearity.
void gate_preactivation(const GateParams& g, std::span<const double> x,
                        std::span<const double> h_prev, Vector& out) {
  out.assign(g.b.begin(), g.b.end());
  matvec_acc(g.w, x, out);
  matvec_acc(g.u, h_prev, out);
}

}  // namespace

LstmParameters zero_parameters(const LstmDims& dims) {
  check_dims(dims);
  LstmParameters p;
  p.dims = dims;
  p.input_gate = zero_gate(dims);
  p.forget_gate = zero_gate(dims);
  p.cell_gate = zero_gate(dims);
  p.output_gate = zero_gate(dims);
  p.proj = Matrix(dims.output, dims.hidden);
  p.proj_bias = Vector(static_cast<size_t>(dims.output), 0.0);
  return p;
}

LstmParameters init_parameters(const LstmDims& dims, SplitMix64& rng) {
  LstmParameters p = zero_parameters(dims);
  double s = 1.0 / std::sqrt(static_cast<double>(dims.hidden));
  fill_uniform(p.input_gate.w, rng, s);
  fill_uniform(p.input_gate.u, rng, s);
  fill_uniform(p.forget_gate.w, rng, s);
  fill_uniform(p.forget_gate.u, rng, s);
  fill_uniform(p.cell_gate.w, rng, s);
  fill_uniform(p.cell_gate.u, rng, s);
  fill_uniform(p.output_gate.w, rng, s);
  fill_uniform(p.output_gate.u, rng, s);
  fill_uniform(p.proj, rng, s);
  // Forget gate starts open so early training can carry state across steps.
  for (double& b : p.forget_gate.b) b = 1.0;
  return p;
}

namespace {

template <typename P, typename D>
std::vector<D*> view_impl(P& p) {
  std::vector<D*> v;
  v.reserve(static_cast<size_t>(p.dims.parameter_count()));
  auto push_m = [&](auto& m) {
    for (auto& x : m.data) v.push_back(&x);
  };
  auto push_v = [&](auto& b) {
    for (auto& x : b) v.push_back(&x);
  };
  for (auto* gate : {&p.input_gate, &p.forget_gate, &p.cell_gate, &p.output_gate}) {
    push_m(gate->w);
    push_m(gate->u);
    push_v(gate->b);
  }
  push_m(p.proj);
  push_v(p.proj_bias);
  return v;
}

}  // namespace

std::vector<double*> parameter_view(LstmParameters& p) { return view_impl<LstmParameters, double>(p); }

std::vector<const double*> parameter_view(const LstmParameters& p) {
  return view_impl<const LstmParameters, const double>(p);
}

void lstm_step(const LstmParameters& params, std::span<const double> x,
               std::span<const double> h_prev, std::span<const double> c_prev, StepCache& cache) {
  const LstmDims& d = params.dims;
  if (static_cast<int>(x.size()) != d.input || static_cast<int>(h_prev.size()) != d.hidden ||
      static_cast<int>(c_prev.size()) != d.hidden)
    throw std::invalid_argument("lstm_step: shape mismatch");

  cache.x.assign(x.begin(), x.end());
  cache.h_prev.assign(h_prev.begin(), h_prev.end());
  cache.c_prev.assign(c_prev.begin(), c_prev.end());

  gate_preactivation(params.input_gate, x, h_prev, cache.i);
  gate_preactivation(params.forget_gate, x, h_prev, cache.f);
  gate_preactivation(params.cell_gate, x, h_prev, cache.g);
  gate_preactivation(params.output_gate, x, h_prev, cache.o);

  cache.c.resize(static_cast<size_t>(d.hidden));
  cache.h.resize(static_cast<size_t>(d.hidden));
  for (int j = 0; j < d.hidden; ++j) {
    size_t k = static_cast<size_t>(j);
    cache.i[k] = sigmoid(cache.i[k]);
    cache.f[k] = sigmoid(cache.f[k]);
    cache.g[k] = std::tanh(cache.g[k]);
    cache.o[k] = sigmoid(cache.o[k]);
    cache.c[k] = cache.f[k] * c_prev[k] + cache.i[k] * cache.g[k];
    cache.h[k] = cache.o[k] * std::tanh(cache.c[k]);
  }
}

ForwardResult forward(const LstmParameters& params, const Matrix& sequence) {
  const LstmDims& d = params.dims;
  if (sequence.rows < 1) throw std::invalid_argument("forward: empty sequence");
  if (sequence.cols != d.input)
    throw std::invalid_argument("forward: sequence width " + std::to_string(sequence.cols) +
                                " != input size " + std::to_string(d.input));

  ForwardResult res;
  res.caches.resize(static_cast<size_t>(sequence.rows));
  Vector h(static_cast<size_t>(d.hidden), 0.0);
  Vector c(static_cast<size_t>(d.hidden), 0.0);
  for (int t = 0; t < sequence.rows; ++t) {
    StepCache& cache = res.caches[static_cast<size_t>(t)];
    lstm_step(params, sequence.row(t), h, c, cache);
    h = cache.h;
    c = cache.c;
  }
  res.prediction.assign(params.proj_bias.begin(), params.proj_bias.end());
  matvec_acc(params.proj, h, res.prediction);
  return res;
}

double mse_loss(std::span<const double> prediction, std::span<const double> target) {
  if (prediction.size() != target.size())
    throw std::invalid_argument("mse_loss: size mismatch");
  double acc = 0.0;
  for (size_t i = 0; i < prediction.size(); ++i) {
    double d = prediction[i] - target[i];
    acc += d * d;
  }
  return acc / static_cast<double>(prediction.size());
}

LstmGradients backward(const LstmParameters& params, const std::vector<StepCache>& caches,
                       std::span<const double> prediction, std::span<const double> target) {
  const LstmDims& d = params.dims;
  if (caches.empty()) throw std::invalid_argument("backward: no caches");
  if (static_cast<int>(caches[0].x.size()) != d.input ||
      static_cast<int>(caches[0].h.size()) != d.hidden)
    throw std::invalid_argument("backward: cache does not match parameter dims");
  if (static_cast<int>(prediction.size()) != d.output ||
      static_cast<int>(target.size()) != d.output)
    throw std::invalid_argument("backward: prediction/target size mismatch");

  LstmGradients grad = zero_parameters(d);

  // d(mse)/d(pred_k) = 2/d_out * (pred_k - target_k)
  Vector dpred(static_cast<size_t>(d.output));
  for (int k = 0; k < d.output; ++k)
    dpred[static_cast<size_t>(k)] =
        2.0 / static_cast<double>(d.output) *
        (prediction[static_cast<size_t>(k)] - target[static_cast<size_t>(k)]);

  const StepCache& last = caches.back();
  outer_acc(grad.proj, dpred, last.h);
  add_acc(dpred, grad.proj_bias);

  Vector dh(static_cast<size_t>(d.hidden), 0.0);
  matvec_transpose_acc(params.proj, dpred, dh);
  Vector dc_next(static_cast<size_t>(d.hidden), 0.0);

  Vector da_i(static_cast<size_t>(d.hidden)), da_f(static_cast<size_t>(d.hidden));
  Vector da_g(static_cast<size_t>(d.hidden)), da_o(static_cast<size_t>(d.hidden));

  for (size_t t = caches.size(); t-- > 0;) {
    const StepCache& s = caches[t];
    for (int j = 0; j < d.hidden; ++j) {
      size_t k = static_cast<size_t>(j);
      double tc = std::tanh(s.c[k]);
      double dcell = dc_next[k] + dh[k] * s.o[k] * (1.0 - tc * tc);
      double dout = dh[k] * tc;
      da_i[k] = dcell * s.g[k] * s.i[k] * (1.0 - s.i[k]);
      da_f[k] = dcell * s.c_prev[k] * s.f[k] * (1.0 - s.f[k]);
      da_g[k] = dcell * s.i[k] * (1.0 - s.g[k] * s.g[k]);
      da_o[k] = dout * s.o[k] * (1.0 - s.o[k]);
      dc_next[k] = dcell * s.f[k];
    }

    outer_acc(grad.input_gate.w, da_i, s.x);
    outer_acc(grad.input_gate.u, da_i, s.h_prev);
    add_acc(da_i, grad.input_gate.b);
    outer_acc(grad.forget_gate.w, da_f, s.x);
    outer_acc(grad.forget_gate.u, da_f, s.h_prev);
    add_acc(da_f, grad.forget_gate.b);
    outer_acc(grad.cell_gate.w, da_g, s.x);
    outer_acc(grad.cell_gate.u, da_g, s.h_prev);
    add_acc(da_g, grad.cell_gate.b);
    outer_acc(grad.output_gate.w, da_o, s.x);
    outer_acc(grad.output_gate.u, da_o, s.h_prev);
    add_acc(da_o, grad.output_gate.b);

    std::fill(dh.begin(), dh.end(), 0.0);
    matvec_transpose_acc(params.input_gate.u, da_i, dh);
    matvec_transpose_acc(params.forget_gate.u, da_f, dh);
    matvec_transpose_acc(params.cell_gate.u, da_g, dh);
    matvec_transpose_acc(params.output_gate.u, da_o, dh);
  }
  return grad;
}

LstmGradients finite_difference_gradients(const LstmParameters& params, const Matrix& sequence,
                                          std::span<const double> target, double eps) {
  LstmParameters probe = params;
  LstmGradients grad = zero_parameters(params.dims);
  auto probe_view = parameter_view(probe);
  auto grad_view = parameter_view(grad);
  for (size_t i = 0; i < probe_view.size(); ++i) {
    double saved = *probe_view[i];
    *probe_view[i] = saved + eps;
    double up = mse_loss(forward(probe, sequence).prediction, target);
    *probe_view[i] = saved - eps;
    double down = mse_loss(forward(probe, sequence).prediction, target);
    *probe_view[i] = saved;
    *grad_view[i] = (up - down) / (2.0 * eps);
  }
  return grad;
}

}  // namespace qtrend
