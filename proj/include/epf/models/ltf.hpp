#pragma once

#include <array>
#include <map>

#include "epf/models/model.hpp"

namespace epf::models {

// Median with the two middle values averaged for even counts.
double median(std::vector<double> v);

// Deseasonalized dummy model: quarter + month + day type + hourly structure
// per (quarter, day type) cluster, each fitted by medians on the residual of
// the previous stage.
struct LtfDummyCoefficients {
  std::array<double, 4> c_q{};
  std::array<double, 12> c_m{};
  std::array<double, 5> c_d{};
  std::array<std::array<std::array<double, 24>, 5>, 4> c_h{};  // [quarter][daytype][hour]
};

class LtfDummyModel : public ForecastModel {
 public:
  explicit LtfDummyModel(ModelOptions opts = {}) : opts_(opts) {}

  std::string id() const override { return "ltf-dummy"; }
  void fit(const data::Dataset& history, Date as_of) override;
  DayPrices predict_day(Date d, const std::optional<DayExogenous>& exo = std::nullopt) const override;
  double predict_hour(const HourlyStamp& t) const override;

  // Seasonal part only, without the price level.
  double seasonal(const HourlyStamp& t) const;

  const LtfDummyCoefficients& coefficients() const { return coef_; }
  void set_coefficients(const LtfDummyCoefficients& c, double level = 0.0);
  const std::map<int, double>& yearly_median() const { return yearly_median_; }
  double level() const { return level_; }
  // Coefficients estimated from a fallback because their cluster was empty.
  int fallback_count() const { return fallbacks_; }

 private:
  ModelOptions opts_;
  LtfDummyCoefficients coef_;
  std::map<int, double> yearly_median_;
  double level_ = 0.0;
  int fallbacks_ = 0;
};

// Hour-of-year index for the yearly sine/cosine, restarting each January 1.
int hour_of_year(const HourlyStamp& t);

class LtfSinusoidalModel : public ForecastModel {
 public:
  explicit LtfSinusoidalModel(ModelOptions opts = {}) : opts_(opts) {}

  std::string id() const override { return "ltf-sin"; }
  void fit(const data::Dataset& history, Date as_of) override;
  DayPrices predict_day(Date d, const std::optional<DayExogenous>& exo = std::nullopt) const override;
  double predict_hour(const HourlyStamp& t) const override;

  // a0 includes the mean yearly median, so the curve sits at price level.
  double a0() const { return a0_; }
  double a1() const { return a1_; }
  double b1() const { return b1_; }
  const std::array<double, 5>& c_d() const { return c_d_; }
  const std::array<std::array<std::array<double, 24>, 5>, 4>& c_h() const { return c_h_; }
  const std::map<int, double>& yearly_median() const { return yearly_median_; }
  int fallback_count() const { return fallbacks_; }

 private:
  ModelOptions opts_;
  double a0_ = 0.0, a1_ = 0.0, b1_ = 0.0;
  std::array<double, 5> c_d_{};
  std::array<std::array<std::array<double, 24>, 5>, 4> c_h_{};
  std::map<int, double> yearly_median_;
  int fallbacks_ = 0;
};

std::unique_ptr<LtfDummyModel> fit_ltf_dummy(const data::Dataset& history, const ModelOptions& opts = {});
double ltf_dummy_predict(const LtfDummyModel& model, const HourlyStamp& t);
std::unique_ptr<LtfSinusoidalModel> fit_ltf_sinusoidal(const data::Dataset& history, const ModelOptions& opts = {});

}  // namespace epf::models
