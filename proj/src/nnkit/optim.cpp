#include "epf/nnkit/optim.hpp"

#include <cmath>

#include "epf/core/error.hpp"

namespace epf::nn {

void rmsprop_step(std::span<double> params, std::span<const double> grads, RmsPropState& state, double lr,
                  double rho, double eps) {
  if (grads.size() != params.size()) throw ShapeError("nnkit", "gradient length mismatch");
  if (state.v.size() != params.size()) state.v.assign(params.size(), 0.0);
  ++state.step;
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double g = grads[k];
    if (g == 0.0 && state.v[k] == 0.0) continue;
    state.v[k] = rho * state.v[k] + (1.0 - rho) * g * g;
    params[k] -= lr * g / std::sqrt(state.v[k] + eps);
  }
}

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, double lr, double beta1,
               double beta2, double eps) {
  if (grads.size() != params.size()) throw ShapeError("nnkit", "gradient length mismatch");
  if (state.m.size() != params.size()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  ++state.step;
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
  for (std::size_t k = 0; k < params.size(); ++k) {
    const double g = grads[k];
    if (g == 0.0 && state.m[k] == 0.0 && state.v[k] == 0.0) continue;
    state.m[k] = beta1 * state.m[k] + (1.0 - beta1) * g;
    state.v[k] = beta2 * state.v[k] + (1.0 - beta2) * g * g;
    params[k] -= lr * (state.m[k] / c1) / (std::sqrt(state.v[k] / c2) + eps);
  }
}

void Optimizer::step(const std::vector<Tensor*>& params) {
  if (cfg_.optimizer == OptimizerKind::RmsProp) {
    if (rms_.size() != params.size()) rms_.assign(params.size(), {});
    for (std::size_t i = 0; i < params.size(); ++i)
      rmsprop_step(params[i]->value, params[i]->ensure_grad(), rms_[i], cfg_.learning_rate, cfg_.rho, cfg_.epsilon);
  } else {
    if (adam_.size() != params.size()) adam_.assign(params.size(), {});
    for (std::size_t i = 0; i < params.size(); ++i)
      adam_step(params[i]->value, params[i]->ensure_grad(), adam_[i], cfg_.learning_rate, cfg_.beta1, cfg_.beta2,
                cfg_.epsilon);
  }
}

}  // namespace epf::nn
