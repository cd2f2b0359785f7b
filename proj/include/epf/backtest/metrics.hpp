#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "epf/core/date.hpp"
#include "epf/data/series.hpp"

namespace epf::backtest {

// Mean absolute error over equal-length, nonempty vectors.
double mae(std::span<const double> realized, std::span<const double> predicted);

// hDev per complete day and dDev per complete day. Days with fewer than 24
// observations are listed in `skipped` and take part in neither.
struct DeviationSeries {
  std::vector<Date> days;
  std::vector<std::array<double, 24>> hdev;
  std::vector<double> ddev;
  std::vector<Date> skipped;
};

// Deviations of the series over [first, last]. The month mean in dDev runs
// over the complete days of that month inside the range.
DeviationSeries deviations(const data::HourlySeries& s, Date first, Date last);
std::vector<std::array<double, 24>> hdev(const data::HourlySeries& s, Date first, Date last);
std::vector<double> ddev(const data::HourlySeries& s, Date first, Date last);

// Sample autocorrelations r_1..r_max_lag (biased normalisation).
std::vector<double> acf(std::span<const double> x, int max_lag);
// Partial autocorrelations via the Durbin-Levinson recursion.
std::vector<double> pacf(std::span<const double> x, int max_lag);
std::vector<double> pacf_from_acf(std::span<const double> r);

struct Quartiles {
  double min = 0, q1 = 0, median = 0, mean = 0, q3 = 0, max = 0;
  std::size_t n = 0;
};

// Linear-interpolation quantiles (type 7).
Quartiles summarize(std::vector<double> v);

}  // namespace epf::backtest
