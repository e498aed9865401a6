#pragma once

#include "gazener/nn/autodiff.hpp"

namespace gazener::nn {

// Global L2 norm over the gradients of trainable parameters.
double gradient_norm(const ParameterSet& params, const Gradients& gradients);

// Rescales gradients to norm `clip` when larger, then theta -= lr * g for
// every trainable parameter. Returns the pre-clip norm. Throws NumericError
// on a non-finite gradient.
double sgd_step(ParameterSet& params, const Gradients& gradients, double learning_rate, double clip);

}  // namespace gazener::nn
