#include "epf/models/lear.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>

#include "epf/core/error.hpp"

namespace epf::models {

double soft_threshold(double z, double gamma) {
  if (z > gamma) return z - gamma;
  if (z < -gamma) return z + gamma;
  return 0.0;
}

LassoResult lasso_gram(std::span<const double> G, std::span<const double> c, double lambda, std::vector<double> start,
                       double tol, int max_sweeps) {
  const std::size_t p = c.size();
  if (G.size() != p * p) throw ShapeError("models", "Gram matrix does not match the coefficient count");
  if (lambda < 0.0) throw InvalidArgumentError("models", "negative lambda");
  LassoResult res;
  res.beta = start.size() == p ? std::move(start) : std::vector<double>(p, 0.0);
  auto& b = res.beta;
  // Gb = G b, kept current as coordinates move.
  std::vector<double> Gb(p, 0.0);
  for (std::size_t j = 0; j < p; ++j)
    if (b[j] != 0.0)
      for (std::size_t k = 0; k < p; ++k) Gb[k] += G[k * p + j] * b[j];
  for (res.sweeps = 1; res.sweeps <= max_sweeps; ++res.sweeps) {
    double delta = 0.0, bmax = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      const double gjj = G[j * p + j];
      if (gjj <= 0.0) {
        b[j] = 0.0;
        continue;
      }
      const double r = c[j] - (Gb[j] - gjj * b[j]);
      const double nb = soft_threshold(r, lambda) / gjj;
      const double d = nb - b[j];
      if (d != 0.0) {
        for (std::size_t k = 0; k < p; ++k) Gb[k] += G[k * p + j] * d;
        b[j] = nb;
        delta = std::max(delta, std::abs(d));
      }
      bmax = std::max(bmax, std::abs(b[j]));
    }
    res.max_delta = delta;
    if (delta < tol * std::max(1.0, bmax)) {
      res.converged = true;
      return res;
    }
  }
  res.sweeps = max_sweeps;
  return res;
}

LassoResult lasso_fit(std::span<const double> X, std::span<const double> y, std::size_t p, double lambda, double tol,
                      int max_sweeps) {
  const std::size_t n = y.size();
  if (n == 0 || X.size() != n * p) throw ShapeError("models", "design matrix does not match the response");
  std::vector<double> G(p * p, 0.0), c(p, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = X.data() + i * p;
    for (std::size_t j = 0; j < p; ++j) {
      c[j] += xi[j] * y[i];
      for (std::size_t k = 0; k < p; ++k) G[j * p + k] += xi[j] * xi[k];
    }
  }
  for (double& v : G) v /= static_cast<double>(n);
  for (double& v : c) v /= static_cast<double>(n);
  return lasso_gram(G, c, lambda, {}, tol, max_sweeps);
}

double lasso_lambda_max(std::span<const double> c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> lambda_grid(double lambda_max, int points, double ratio) {
  std::vector<double> g;
  if (points < 1) return g;
  if (points == 1 || lambda_max <= 0.0) return {lambda_max};
  for (int i = 0; i < points; ++i) g.push_back(lambda_max * std::pow(ratio, static_cast<double>(i) / (points - 1)));
  return g;
}

namespace {

constexpr int kLagDays[4] = {1, 2, 3, 7};

// Value at hour h, or the closest earlier hour, or the closest later one.
double lag_value(const DayPrices& p, int h) {
  for (int k = h; k >= 0; --k)
    if (!std::isnan(p[k])) return p[k];
  for (int k = h + 1; k < 24; ++k)
    if (!std::isnan(p[k])) return p[k];
  return std::nan("");
}

bool any_present(const DayPrices& p) {
  return std::any_of(p.begin(), p.end(), [](double v) { return !std::isnan(v); });
}

struct Moments {
  std::size_t n = 0;
  std::vector<double> sx, sxx, sxy;
  double sy = 0.0;
  explicit Moments(std::size_t p) : sx(p, 0.0), sxx(p * p, 0.0), sxy(p, 0.0) {}
  void add(const std::vector<double>& z, double y) {
    const std::size_t p = sx.size();
    ++n;
    sy += y;
    for (std::size_t j = 0; j < p; ++j) {
      sx[j] += z[j];
      sxy[j] += z[j] * y;
      if (z[j] == 0.0) continue;
      for (std::size_t k = 0; k < p; ++k) sxx[j * p + k] += z[j] * z[k];
    }
  }
  Moments& operator+=(const Moments& o) {
    n += o.n;
    sy += o.sy;
    for (std::size_t j = 0; j < sx.size(); ++j) {
      sx[j] += o.sx[j];
      sxy[j] += o.sxy[j];
    }
    for (std::size_t k = 0; k < sxx.size(); ++k) sxx[k] += o.sxx[k];
    return *this;
  }
  // Centered Gram and cross moments, for a fit with intercept.
  void centered(std::vector<double>& G, std::vector<double>& c, std::vector<double>& mu, double& ybar) const {
    const std::size_t p = sx.size();
    const double nn = static_cast<double>(n);
    mu.resize(p);
    for (std::size_t j = 0; j < p; ++j) mu[j] = sx[j] / nn;
    ybar = sy / nn;
    G.assign(p * p, 0.0);
    c.assign(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
      c[j] = sxy[j] / nn - mu[j] * ybar;
      for (std::size_t k = 0; k < p; ++k) G[j * p + k] = sxx[j * p + k] / nn - mu[j] * mu[k];
    }
  }
};

}  // namespace

std::vector<double> LearModel::raw_features(Date, int h, const std::array<const DayPrices*, 4>& lags, double wind,
                                            double solar, int daytype, int month) const {
  std::vector<double> f;
  f.reserve(names_.size());
  for (const auto* l : lags) f.push_back(lag_value(*l, h));
  if (renewables_) {
    f.push_back(wind);
    f.push_back(solar);
  }
  // First category of each block is the reference level.
  for (int t = 2; t <= 5; ++t) f.push_back(daytype == t ? 1.0 : 0.0);
  for (int k = 1; k < 24; ++k) f.push_back(h == k ? 1.0 : 0.0);
  for (int m = 2; m <= 12; ++m) f.push_back(month == m ? 1.0 : 0.0);
  return f;
}

void LearModel::fit(const data::Dataset& history, Date as_of) {
  if (renewables_ && !history.has_renewables())
    throw FeatureError("models", "lear: renewable features requested but the dataset has none");
  const Date first = std::max(history.first_date(), window_start(as_of, opts_.window_years));
  const Date last = std::min(as_of, history.last_date());
  if (last < first || last - first + 1 < 8)
    throw InsufficientHistoryError("models", "lear: needs at least 8 days of history");

  names_ = {"lag24", "lag48", "lag72", "lag168"};
  if (renewables_) {
    names_.push_back("wind");
    names_.push_back("solar");
  }
  for (int t = 2; t <= 5; ++t) names_.push_back("daytype" + std::to_string(t));
  for (int h = 1; h < 24; ++h) names_.push_back("hour" + std::to_string(h));
  for (int m = 2; m <= 12; ++m) names_.push_back("month" + std::to_string(m));
  const std::size_t p = names_.size();

  const int n_days = last - first + 1;
  std::vector<DayPrices> price(n_days), wind(n_days), solar(n_days);
  for (int k = 0; k < n_days; ++k) {
    price[k] = history.price.day(first + k);
    if (renewables_) {
      wind[k] = history.wind->day(first + k);
      solar[k] = history.solar->day(first + k);
    }
  }

  std::vector<std::vector<double>> rows;
  std::vector<double> ys;
  for (int k = 7; k < n_days; ++k) {
    std::array<const DayPrices*, 4> lags;
    bool ok = true;
    for (int l = 0; l < 4; ++l) {
      lags[l] = &price[k - kLagDays[l]];
      ok = ok && any_present(*lags[l]);
    }
    if (!ok) continue;
    const Date d = first + k;
    const int dt = calendar::day_type5(d, opts_.cal());
    for (int h = 0; h < 24; ++h) {
      if (std::isnan(price[k][h])) continue;
      if (renewables_ && (std::isnan(wind[k][h]) || std::isnan(solar[k][h]))) continue;
      rows.push_back(raw_features(d, h, lags, wind[k][h], solar[k][h], dt, static_cast<int>(d.month())));
      ys.push_back(price[k][h]);
    }
  }
  if (rows.size() < 2) throw InsufficientHistoryError("models", "lear: too few complete samples");

  // Standardize with the training-window moments; constant columns stay at 0.
  mean_.assign(p, 0.0);
  std_.assign(p, 0.0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < p; ++j) mean_[j] += r[j];
  for (double& m : mean_) m /= static_cast<double>(rows.size());
  for (const auto& r : rows)
    for (std::size_t j = 0; j < p; ++j) std_[j] += (r[j] - mean_[j]) * (r[j] - mean_[j]);
  for (double& s : std_) {
    s = std::sqrt(s / static_cast<double>(rows.size()));
    if (!(s > 1e-12)) s = 0.0;
  }

  const std::size_t n = rows.size();
  const std::size_t n_fit = std::max<std::size_t>(1, n - n / 10);
  Moments head(p), tail(p);
  std::vector<double> z(p);
  auto standardize = [&](const std::vector<double>& r, std::vector<double>& out) {
    for (std::size_t j = 0; j < p; ++j) out[j] = std_[j] > 0.0 ? (r[j] - mean_[j]) / std_[j] : 0.0;
  };
  for (std::size_t i = 0; i < n; ++i) {
    standardize(rows[i], z);
    (i < n_fit ? head : tail).add(z, ys[i]);
  }

  std::vector<double> G, c, mu;
  double ybar = 0.0;
  head.centered(G, c, mu, ybar);
  std::vector<double> grid = grid_;
  if (grid.empty()) grid = lambda_grid(lasso_lambda_max(c));
  std::sort(grid.begin(), grid.end(), std::greater<>());

  lambda_ = grid.front();
  std::vector<double> warm, best_beta;
  if (grid.size() > 1 && tail.n > 0) {
    double best_mae = std::numeric_limits<double>::infinity();
    for (double lam : grid) {
      auto r = lasso_gram(G, c, lam, warm);
      warm = r.beta;
      const double b0 = ybar - std::inner_product(mu.begin(), mu.end(), r.beta.begin(), 0.0);
      double mae = 0.0;
      for (std::size_t i = n_fit; i < n; ++i) {
        standardize(rows[i], z);
        mae += std::abs(ys[i] - b0 - std::inner_product(z.begin(), z.end(), r.beta.begin(), 0.0));
      }
      mae /= static_cast<double>(n - n_fit);
      if (mae < best_mae) {
        best_mae = mae;
        lambda_ = lam;
        best_beta = r.beta;
      }
    }
  }

  head += tail;
  head.centered(G, c, mu, ybar);
  const auto r = lasso_gram(G, c, lambda_, best_beta);
  beta_ = r.beta;
  converged_ = r.converged;
  final_delta_ = r.max_delta;
  if (!converged_)
    std::cerr << "warning: lear did not converge for " << as_of.to_string() << " (last change " << final_delta_
              << ")\n";
  intercept_ = ybar - std::inner_product(mu.begin(), mu.end(), beta_.begin(), 0.0);

  recent_.clear();
  for (int k = std::max(0, n_days - 7); k < n_days; ++k)
    if (any_present(price[k])) recent_[first + k] = price[k];
}

DayPrices LearModel::predict_day(Date d, const std::optional<DayExogenous>& exo) const {
  if (beta_.empty()) throw InvalidArgumentError("models", "lear: predict before fit");
  if (renewables_ && !exo) throw FeatureError("models", "lear: renewable forecasts for " + d.to_string() + " required");
  std::array<const DayPrices*, 4> lags;
  for (int l = 0; l < 4; ++l) {
    auto it = recent_.find(d - kLagDays[l]);
    if (it == recent_.end())
      throw InsufficientHistoryError("models", "lear: no prices for " + (d - kLagDays[l]).to_string());
    lags[l] = &it->second;
  }
  const int dt = calendar::day_type5(d, opts_.cal());
  DayPrices out;
  const std::size_t p = beta_.size();
  for (int h = 0; h < 24; ++h) {
    const auto f = raw_features(d, h, lags, exo ? exo->wind[h] : 0.0, exo ? exo->solar[h] : 0.0, dt,
                                static_cast<int>(d.month()));
    double v = intercept_;
    for (std::size_t j = 0; j < p; ++j)
      if (std_[j] > 0.0) v += beta_[j] * (f[j] - mean_[j]) / std_[j];
    out[h] = v;
  }
  return out;
}

std::unique_ptr<LearModel> fit_lear(const data::Dataset& history, Date as_of, std::vector<double> grid,
                                    bool with_renewables, const ModelOptions& opts) {
  auto m = std::make_unique<LearModel>(with_renewables, opts);
  m->set_lambda_grid(std::move(grid));
  m->fit(history, as_of);
  return m;
}

}  // namespace epf::models
