#include "epf/data/scaler.hpp"

#include <algorithm>
#include <cmath>

#include "epf/core/error.hpp"

namespace epf::data {

ScalerParams fit_scaler(std::span<const double> v) {
  if (v.size() < 2 || std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); })) {
    throw DegenerateScaleError("data", "scaler needs at least two distinct training values");
  }
  // Two-pass mean/variance.
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(v.size()));
  if (!(sd > 0.0)) throw DegenerateScaleError("data", "zero standard deviation");
  return {mean, sd};
}

}  // namespace epf::data
