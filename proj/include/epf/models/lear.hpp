#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "epf/models/model.hpp"

namespace epf::models {

double soft_threshold(double z, double gamma);

struct LassoResult {
  std::vector<double> beta;
  int sweeps = 0;
  bool converged = false;
  double max_delta = 0.0;  // largest coefficient change in the last sweep
};

// Cyclic coordinate descent for (1/2n)|y - X b|^2 + lambda |b|_1 given the
// scaled Gram matrix G = X'X/n (p x p, row-major) and c = X'y/n.
// Stops once a sweep moves no coefficient by more than tol * max(1, max|b|).
LassoResult lasso_gram(std::span<const double> G, std::span<const double> c, double lambda,
                       std::vector<double> start = {}, double tol = 1e-6, int max_sweeps = 1000);

// Same problem from a row-major n x p design. No intercept, no scaling.
LassoResult lasso_fit(std::span<const double> X, std::span<const double> y, std::size_t p, double lambda,
                      double tol = 1e-6, int max_sweeps = 1000);

// Largest |X'y|/n, the smallest lambda with an all-zero solution.
double lasso_lambda_max(std::span<const double> c);

// 20-point log-spaced grid from lambda_max down to lambda_max * 1e-4.
std::vector<double> lambda_grid(double lambda_max, int points = 20, double ratio = 1e-4);

// Autoregressive LASSO benchmark shared across hours: price lags of 1, 2, 3
// and 7 days at the same hour, optional scaled wind and solar, and one-hot
// day type, hour and month, all standardized.
class LearModel : public ForecastModel {
 public:
  LearModel(bool with_renewables, ModelOptions opts = {}) : renewables_(with_renewables), opts_(opts) {}

  std::string id() const override { return renewables_ ? "lear+renew" : "lear"; }
  void fit(const data::Dataset& history, Date as_of) override;
  DayPrices predict_day(Date d, const std::optional<DayExogenous>& exo = std::nullopt) const override;
  bool uses_renewables() const override { return renewables_; }

  double lambda() const { return lambda_; }
  const std::vector<double>& beta() const { return beta_; }
  double intercept() const { return intercept_; }
  bool converged() const { return converged_; }
  double final_delta() const { return final_delta_; }
  const std::vector<std::string>& feature_names() const { return names_; }

  // Explicit grid instead of the default path.
  void set_lambda_grid(std::vector<double> grid) { grid_ = std::move(grid); }

 private:
  std::vector<double> raw_features(Date d, int h, const std::array<const DayPrices*, 4>& lags, double wind,
                                   double solar, int daytype, int month) const;

  bool renewables_;
  ModelOptions opts_;
  std::vector<double> grid_;
  std::vector<std::string> names_;
  std::vector<double> mean_, std_;
  std::vector<double> beta_;
  double intercept_ = 0.0;
  double lambda_ = 0.0;
  bool converged_ = false;
  double final_delta_ = 0.0;
  std::map<Date, DayPrices> recent_;  // last week of prices up to as_of
};

std::unique_ptr<LearModel> fit_lear(const data::Dataset& history, Date as_of, std::vector<double> lambda_grid = {},
                                    bool with_renewables = true, const ModelOptions& opts = {});

}  // namespace epf::models
