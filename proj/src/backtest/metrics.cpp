#include "epf/backtest/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "epf/core/error.hpp"

namespace epf::backtest {

double mae(std::span<const double> realized, std::span<const double> predicted) {
  if (realized.size() != predicted.size())
    throw InvalidArgumentError("backtest", "mae: " + std::to_string(realized.size()) + " realized vs " +
                                               std::to_string(predicted.size()) + " predicted values");
  if (realized.empty()) throw InvalidArgumentError("backtest", "mae of empty vectors");
  double s = 0.0;
  for (std::size_t i = 0; i < realized.size(); ++i) s += std::abs(realized[i] - predicted[i]);
  return s / static_cast<double>(realized.size());
}

DeviationSeries deviations(const data::HourlySeries& s, Date first, Date last) {
  DeviationSeries out;
  std::vector<double> day_mean;
  for (Date d = first; d <= last; ++d) {
    const auto p = s.day(d);
    if (std::any_of(p.begin(), p.end(), [](double v) { return std::isnan(v); })) {
      out.skipped.push_back(d);
      continue;
    }
    const double m = std::accumulate(p.begin(), p.end(), 0.0) / 24.0;
    std::array<double, 24> h;
    for (int k = 0; k < 24; ++k) h[k] = p[k] - m;
    out.days.push_back(d);
    out.hdev.push_back(h);
    day_mean.push_back(m);
  }
  std::map<std::pair<int, unsigned>, std::pair<double, int>> month;
  for (std::size_t i = 0; i < out.days.size(); ++i) {
    auto& acc = month[{out.days[i].year(), out.days[i].month()}];
    acc.first += day_mean[i];
    ++acc.second;
  }
  out.ddev.resize(out.days.size());
  for (std::size_t i = 0; i < out.days.size(); ++i) {
    const auto& acc = month[{out.days[i].year(), out.days[i].month()}];
    out.ddev[i] = day_mean[i] - acc.first / acc.second;
  }
  return out;
}

std::vector<std::array<double, 24>> hdev(const data::HourlySeries& s, Date first, Date last) {
  return deviations(s, first, last).hdev;
}

std::vector<double> ddev(const data::HourlySeries& s, Date first, Date last) {
  return deviations(s, first, last).ddev;
}

std::vector<double> acf(std::span<const double> x, int max_lag) {
  if (max_lag < 1 || x.size() <= static_cast<std::size_t>(max_lag))
    throw InvalidArgumentError("backtest", "acf needs more than max_lag observations");
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double c0 = 0.0;
  for (double v : x) c0 += (v - m) * (v - m);
  if (!(c0 > 0.0)) throw UndefinedValueError("backtest", "autocorrelation of a constant series");
  std::vector<double> r(max_lag);
  for (int k = 1; k <= max_lag; ++k) {
    double c = 0.0;
    for (std::size_t t = 0; t + k < x.size(); ++t) c += (x[t] - m) * (x[t + k] - m);
    r[k - 1] = c / c0;
  }
  return r;
}

std::vector<double> pacf_from_acf(std::span<const double> r) {
  const std::size_t K = r.size();
  std::vector<double> out(K), phi, prev;
  double v = 1.0;
  for (std::size_t k = 1; k <= K; ++k) {
    double num = r[k - 1];
    for (std::size_t j = 1; j < k; ++j) num -= prev[j - 1] * r[k - j - 1];
    const double a = v > 0.0 ? num / v : 0.0;
    phi.assign(k, 0.0);
    for (std::size_t j = 1; j < k; ++j) phi[j - 1] = prev[j - 1] - a * prev[k - j - 1];
    phi[k - 1] = a;
    v *= 1.0 - a * a;
    out[k - 1] = a;
    prev = phi;
  }
  return out;
}

std::vector<double> pacf(std::span<const double> x, int max_lag) { return pacf_from_acf(acf(x, max_lag)); }

Quartiles summarize(std::vector<double> v) {
  if (v.empty()) throw InvalidArgumentError("backtest", "summary of an empty group");
  std::sort(v.begin(), v.end());
  auto q = [&](double p) {
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
  };
  Quartiles s;
  s.n = v.size();
  s.min = v.front();
  s.max = v.back();
  s.q1 = q(0.25);
  s.median = q(0.5);
  s.q3 = q(0.75);
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  return s;
}

}  // namespace epf::backtest
