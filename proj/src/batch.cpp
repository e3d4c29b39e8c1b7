#include "qtrend/batch.hpp"

#include <stdexcept>

namespace qtrend {

namespace {

struct BlockPartial {
  double loss_sum = 0.0;
  LstmGradients grad;
};

// Per-sample loss + gradient accumulated into the block partial, in order.
void accumulate_block(const LstmParameters& params, std::span<const WindowSample> samples,
                      size_t begin, size_t end, BlockPartial& out) {
  for (size_t s = begin; s < end; ++s) {
    ForwardResult fwd = forward(params, samples[s].input);
    out.loss_sum += mse_loss(fwd.prediction, samples[s].target);
    LstmGradients g = backward(params, fwd.caches, fwd.prediction, samples[s].target);
    auto acc = parameter_view(out.grad);
    auto src = parameter_view(static_cast<const LstmGradients&>(g));
    for (size_t i = 0; i < acc.size(); ++i) *acc[i] += *src[i];
  }
}

BatchResult reduce_blocks(std::span<const BlockPartial> partials, const LstmDims& dims,
                          size_t n_samples) {
  BatchResult res;
  res.gradient = zero_parameters(dims);
  auto total = parameter_view(res.gradient);
  for (const BlockPartial& p : partials) {
    res.mean_loss += p.loss_sum;
    auto part = parameter_view(static_cast<const LstmGradients&>(p.grad));
    for (size_t i = 0; i < total.size(); ++i) *total[i] += *part[i];
  }
  res.mean_loss /= static_cast<double>(n_samples);
  return res;
}

std::vector<BlockPartial> make_partials(const LstmDims& dims, size_t n_blocks) {
  std::vector<BlockPartial> partials(n_blocks);
  for (auto& p : partials) p.grad = zero_parameters(dims);
  return partials;
}

}  // namespace

BatchResult batch_loss_gradient_serial(const LstmParameters& params,
                                       std::span<const WindowSample> samples) {
  if (samples.empty()) throw std::invalid_argument("batch_loss_gradient: empty batch");
  size_t n_blocks = (samples.size() + kBatchBlock - 1) / kBatchBlock;
  auto partials = make_partials(params.dims, n_blocks);
  for (size_t b = 0; b < n_blocks; ++b) {
    size_t begin = b * kBatchBlock;
    size_t end = std::min(begin + kBatchBlock, samples.size());
    accumulate_block(params, samples, begin, end, partials[b]);
  }
  return reduce_blocks(partials, params.dims, samples.size());
}

BatchResult batch_loss_gradient(const LstmParameters& params,
                                std::span<const WindowSample> samples) {
  if (samples.empty()) throw std::invalid_argument("batch_loss_gradient: empty batch");
  size_t n_blocks = (samples.size() + kBatchBlock - 1) / kBatchBlock;
  auto partials = make_partials(params.dims, n_blocks);
#pragma omp parallel for schedule(static)
  for (long b = 0; b < static_cast<long>(n_blocks); ++b) {
    size_t begin = static_cast<size_t>(b) * kBatchBlock;
    size_t end = std::min(begin + kBatchBlock, samples.size());
    accumulate_block(params, samples, begin, end, partials[static_cast<size_t>(b)]);
  }
  return reduce_blocks(partials, params.dims, samples.size());
}

}  // namespace qtrend
