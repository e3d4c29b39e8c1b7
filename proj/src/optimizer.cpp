#include "qtrend/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace qtrend {

double global_norm(const LstmGradients& grad) {
  double acc = 0.0;
  for (const double* g : parameter_view(grad)) acc += *g * *g;
  return std::sqrt(acc);
}

void sgd_step(LstmParameters& params, const LstmGradients& grad, double learning_rate,
              double clip) {
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
  if (!(clip > 0.0)) throw std::invalid_argument("clip must be > 0");
  if (params.dims != grad.dims)
    throw std::invalid_argument("sgd_step: gradient dims do not match parameters");

  double norm = global_norm(grad);
  if (!std::isfinite(norm)) throw std::runtime_error("sgd_step: non-finite gradient");
  double scale = norm > clip ? clip / norm : 1.0;

  auto pv = parameter_view(params);
  auto gv = parameter_view(static_cast<const LstmGradients&>(grad));
  for (size_t i = 0; i < pv.size(); ++i) *pv[i] -= learning_rate * scale * *gv[i];
}

}  // namespace qtrend
