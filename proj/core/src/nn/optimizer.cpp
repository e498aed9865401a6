#include "gazener/nn/optimizer.hpp"

#include <cmath>

#include "gazener/error.hpp"

namespace gazener::nn {

double gradient_norm(const ParameterSet& params, const Gradients& gradients) {
  double squared = 0.0;
  for (int id = 0; id < params.size(); ++id) {
    if (!params[id].trainable || !gradients.touched(id)) continue;
    const Matrix& dense = gradients.dense_value(id);
    if (dense.size() > 0) squared += dense.squaredNorm();
    for (const auto& [col, g] : gradients.columns(id)) squared += g.squaredNorm();
  }
  return std::sqrt(squared);
}

double sgd_step(ParameterSet& params, const Gradients& gradients, double learning_rate, double clip) {
  const double norm = gradient_norm(params, gradients);
  if (!std::isfinite(norm)) throw NumericError("non-finite gradient norm");
  const double scale = norm > clip ? clip / norm : 1.0;
  const double step = learning_rate * scale;
  for (int id = 0; id < params.size(); ++id) {
    Parameter& p = params[id];
    if (!p.trainable || !gradients.touched(id)) continue;
    const Matrix& dense = gradients.dense_value(id);
    if (dense.size() > 0) p.value -= step * dense;
    for (const auto& [col, g] : gradients.columns(id)) p.value.col(col) -= step * g;
  }
  return norm;
}

}  // namespace gazener::nn
