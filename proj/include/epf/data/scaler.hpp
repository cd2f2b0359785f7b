#pragma once

#include <span>

namespace epf::data {

// Standard scaler: (x - mean) / stddev with the population standard deviation.
struct ScalerParams {
  double mean = 0.0;
  double stddev = 1.0;

  double apply(double x) const { return (x - mean) / stddev; }
  double invert(double z) const { return z * stddev + mean; }
};

// Throws DegenerateScaleError when fewer than two distinct values are given.
ScalerParams fit_scaler(std::span<const double> training_values);
inline double apply_scaler(const ScalerParams& p, double x) { return p.apply(x); }

}  // namespace epf::data
