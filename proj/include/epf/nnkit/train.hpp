#pragma once

#include <cstdint>
#include <vector>

#include "epf/nnkit/network.hpp"

namespace epf::nn {

struct TrainResult {
  std::vector<double> train_loss;  // per epoch, mean over batches weighted by size
  std::vector<double> val_loss;    // per epoch, only with early stopping
  int epochs_run = 0;
  int best_epoch = -1;             // 0-based, early stopping only
};

// Mini-batch training with a seeded shuffle per epoch. With cfg.epochs empty
// the chronologically last validation_fraction of samples is held out and
// training stops once validation MSE has not improved for
// early_stop_patience epochs; the best weights are restored.
TrainResult train(Network& net, const Samples& samples, const NetworkConfig& cfg);

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
};

// Central differences of the batch MSE against backward(), for every
// parameter or a seeded subsample of max_params of them.
GradCheckResult grad_check(Network& net, const Samples& batch, double epsilon, std::uint64_t seed = 0,
                           std::size_t max_params = 10000);

// grad_check over `count` seeded random networks: zero to two hidden layers,
// relu or sigmoid, with and without embedding inputs.
struct GradCheckSuite {
  std::size_t networks = 0;
  std::size_t parameters = 0;
  double max_rel_error = 0.0;
  std::size_t worst = 0;  // index of the network with the largest error
};
GradCheckSuite random_grad_checks(std::size_t count, std::uint64_t seed);

}  // namespace epf::nn
