#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "epf/nnkit/network.hpp"

namespace epf::nn {

struct RmsPropState {
  std::vector<double> v;
  std::int64_t step = 0;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t step = 0;
};

// v <- rho v + (1-rho) g^2;  p <- p - lr g / sqrt(v + eps)
void rmsprop_step(std::span<double> params, std::span<const double> grads, RmsPropState& state, double lr,
                  double rho = 0.9, double eps = 1e-8);

// Bias-corrected Adam; p <- p - lr m_hat / (sqrt(v_hat) + eps)
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state, double lr,
               double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

// Per-parameter-tensor optimizer state for a whole network.
class Optimizer {
 public:
  explicit Optimizer(const NetworkConfig& cfg) : cfg_(cfg) {}
  void step(const std::vector<Tensor*>& params);

 private:
  NetworkConfig cfg_;
  std::vector<RmsPropState> rms_;
  std::vector<AdamState> adam_;
};

}  // namespace epf::nn
