#include "epf/models/ltf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "epf/core/error.hpp"

namespace epf::models {

double median(std::vector<double> v) {
  if (v.empty()) throw InvalidArgumentError("models", "median of nothing");
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double hi = v[mid];
  if (v.size() % 2) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lo + hi);
}

int hour_of_year(const HourlyStamp& t) { return t.date.day_of_year() * 24 + t.hour; }

namespace {

struct Obs {
  int year, quarter, month, daytype, hour, hoy;
  double r;  // price minus the yearly median
};

// Observations up to as_of, deseasonalized by the yearly median.
std::vector<Obs> deseasonalize(const data::Dataset& history, Date as_of, const calendar::HolidayCalendar& cal,
                               std::map<int, double>& yearly_median) {
  const auto& price = history.price;
  if (price.empty()) throw InsufficientHistoryError("models", "ltf: empty history");
  const Date last = std::min(as_of, price.last_date());
  if (last < price.first_date() || last - price.first_date() + 1 < 365)
    throw InsufficientHistoryError("models", "ltf: needs at least one full year of history");
  std::vector<Obs> obs;
  std::map<int, std::vector<double>> by_year;
  Date cur;
  int dt = 0;
  bool have = false;
  for (std::size_t i = 0; i < price.size() && price.stamp(i).date <= last; ++i) {
    const auto& st = price.stamp(i);
    if (!have || st.date != cur) {
      cur = st.date;
      dt = calendar::day_type5(cur, cal);
      have = true;
    }
    const int m = static_cast<int>(cur.month());
    obs.push_back({cur.year(), static_cast<int>(cur.quarter()), m, dt, st.hour, hour_of_year(st), price.value(i)});
    by_year[cur.year()].push_back(price.value(i));
  }
  yearly_median.clear();
  for (auto& [y, v] : by_year) yearly_median[y] = median(std::move(v));
  for (auto& o : obs) o.r -= yearly_median[o.year];
  return obs;
}

double mean_level(const std::map<int, double>& ym) {
  double s = 0.0;
  for (const auto& [y, m] : ym) s += m;
  return ym.empty() ? 0.0 : s / static_cast<double>(ym.size());
}

// Median of residuals per group; empty groups get 0 and are counted.
template <std::size_t N, typename Key>
std::array<double, N> group_medians(const std::vector<Obs>& obs, Key key, int& fallbacks) {
  std::array<std::vector<double>, N> g;
  for (const auto& o : obs) g[key(o)].push_back(o.r);
  std::array<double, N> out{};
  for (std::size_t k = 0; k < N; ++k) {
    if (g[k].empty()) ++fallbacks;
    else out[k] = median(std::move(g[k]));
  }
  return out;
}

// Hourly structure per (quarter, daytype, hour); empty clusters fall back to
// the median over all quarters of the same (daytype, hour).
std::array<std::array<std::array<double, 24>, 5>, 4> cluster_medians(const std::vector<Obs>& obs, int& fallbacks) {
  std::array<std::array<std::array<std::vector<double>, 24>, 5>, 4> g;
  std::array<std::array<std::vector<double>, 24>, 5> parent;
  for (const auto& o : obs) {
    g[o.quarter - 1][o.daytype - 1][o.hour].push_back(o.r);
    parent[o.daytype - 1][o.hour].push_back(o.r);
  }
  std::array<std::array<std::array<double, 24>, 5>, 4> out{};
  for (int q = 0; q < 4; ++q)
    for (int t = 0; t < 5; ++t)
      for (int h = 0; h < 24; ++h) {
        if (!g[q][t][h].empty()) {
          out[q][t][h] = median(std::move(g[q][t][h]));
        } else {
          ++fallbacks;
          out[q][t][h] = parent[t][h].empty() ? 0.0 : median(parent[t][h]);
        }
      }
  return out;
}

}  // namespace

void LtfDummyModel::fit(const data::Dataset& history, Date as_of) {
  fallbacks_ = 0;
  auto obs = deseasonalize(history, as_of, opts_.cal(), yearly_median_);
  level_ = mean_level(yearly_median_);
  coef_.c_q = group_medians<4>(obs, [](const Obs& o) { return o.quarter - 1; }, fallbacks_);
  for (auto& o : obs) o.r -= coef_.c_q[o.quarter - 1];
  coef_.c_m = group_medians<12>(obs, [](const Obs& o) { return o.month - 1; }, fallbacks_);
  for (auto& o : obs) o.r -= coef_.c_m[o.month - 1];
  coef_.c_d = group_medians<5>(obs, [](const Obs& o) { return o.daytype - 1; }, fallbacks_);
  for (auto& o : obs) o.r -= coef_.c_d[o.daytype - 1];
  coef_.c_h = cluster_medians(obs, fallbacks_);
}

void LtfDummyModel::set_coefficients(const LtfDummyCoefficients& c, double level) {
  coef_ = c;
  level_ = level;
}

double LtfDummyModel::seasonal(const HourlyStamp& t) const {
  const int q = static_cast<int>(t.date.quarter()) - 1;
  const int dt = calendar::day_type5(t.date, opts_.cal()) - 1;
  return coef_.c_q[q] + coef_.c_m[t.date.month() - 1] + coef_.c_d[dt] + coef_.c_h[q][dt][t.hour];
}

double LtfDummyModel::predict_hour(const HourlyStamp& t) const { return level_ + seasonal(t); }

DayPrices LtfDummyModel::predict_day(Date d, const std::optional<DayExogenous>&) const {
  DayPrices out;
  for (int h = 0; h < 24; ++h) out[h] = predict_hour({d, h});
  return out;
}

double ltf_dummy_predict(const LtfDummyModel& model, const HourlyStamp& t) { return model.seasonal(t); }

std::unique_ptr<LtfDummyModel> fit_ltf_dummy(const data::Dataset& history, const ModelOptions& opts) {
  auto m = std::make_unique<LtfDummyModel>(opts);
  m->fit(history, history.last_date());
  return m;
}

namespace {

constexpr double kOmega = 2.0 * std::numbers::pi / 8760.0;

// Solves the 3x3 system A x = b by Gaussian elimination with partial pivoting.
std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> A, std::array<double, 3> b) {
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 3; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
    if (std::abs(A[piv][c]) < 1e-300) throw UndefinedValueError("models", "ltf-sin: singular normal equations");
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (int r = c + 1; r < 3; ++r) {
      const double f = A[r][c] / A[c][c];
      for (int k = c; k < 3; ++k) A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::array<double, 3> x{};
  for (int r = 2; r >= 0; --r) {
    double s = b[r];
    for (int k = r + 1; k < 3; ++k) s -= A[r][k] * x[k];
    x[r] = s / A[r][r];
  }
  return x;
}

}  // namespace

void LtfSinusoidalModel::fit(const data::Dataset& history, Date as_of) {
  fallbacks_ = 0;
  auto obs = deseasonalize(history, as_of, opts_.cal(), yearly_median_);
  std::array<std::array<double, 3>, 3> A{};
  std::array<double, 3> b{};
  for (const auto& o : obs) {
    const double f[3] = {1.0, std::sin(kOmega * o.hoy), std::cos(kOmega * o.hoy)};
    for (int i = 0; i < 3; ++i) {
      b[i] += f[i] * o.r;
      for (int j = 0; j < 3; ++j) A[i][j] += f[i] * f[j];
    }
  }
  const auto x = solve3(A, b);
  for (auto& o : obs) o.r -= x[0] + x[1] * std::sin(kOmega * o.hoy) + x[2] * std::cos(kOmega * o.hoy);
  a0_ = x[0] + mean_level(yearly_median_);
  a1_ = x[1];
  b1_ = x[2];
  c_d_ = group_medians<5>(obs, [](const Obs& o) { return o.daytype - 1; }, fallbacks_);
  for (auto& o : obs) o.r -= c_d_[o.daytype - 1];
  c_h_ = cluster_medians(obs, fallbacks_);
}

double LtfSinusoidalModel::predict_hour(const HourlyStamp& t) const {
  const int q = static_cast<int>(t.date.quarter()) - 1;
  const int dt = calendar::day_type5(t.date, opts_.cal()) - 1;
  const int hoy = hour_of_year(t);
  return a0_ + a1_ * std::sin(kOmega * hoy) + b1_ * std::cos(kOmega * hoy) + c_d_[dt] + c_h_[q][dt][t.hour];
}

DayPrices LtfSinusoidalModel::predict_day(Date d, const std::optional<DayExogenous>&) const {
  DayPrices out;
  for (int h = 0; h < 24; ++h) out[h] = predict_hour({d, h});
  return out;
}

std::unique_ptr<LtfSinusoidalModel> fit_ltf_sinusoidal(const data::Dataset& history, const ModelOptions& opts) {
  auto m = std::make_unique<LtfSinusoidalModel>(opts);
  m->fit(history, history.last_date());
  return m;
}

}  // namespace epf::models
