#pragma once

#include <optional>

#include "epf/models/model.hpp"

namespace epf::models {

// Prices of the most recent complete day before d whose day type equals d's.
// Throws InsufficientHistoryError when the history holds no such day.
DayPrices naive_predict(const data::Dataset& history, Date d,
                        const calendar::HolidayCalendar& cal = calendar::HolidayCalendar::german());

class NaiveModel : public ForecastModel {
 public:
  explicit NaiveModel(ModelOptions opts = {}) : opts_(opts) {}

  std::string id() const override { return "naive"; }
  void fit(const data::Dataset& history, Date as_of) override;
  DayPrices predict_day(Date d, const std::optional<DayExogenous>& exo = std::nullopt) const override;
  double predict_hour(const HourlyStamp& t) const override { return predict_day(t.date)[t.hour]; }

 private:
  struct Kept {
    Date date;
    DayPrices prices;
  };
  ModelOptions opts_;
  std::array<std::optional<Kept>, 6> last_;  // by day type 1..5
};

}  // namespace epf::models
