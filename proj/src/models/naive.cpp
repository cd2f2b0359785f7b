#include "epf/models/naive.hpp"

#include <algorithm>
#include <cmath>

#include "epf/core/error.hpp"

namespace epf::models {

namespace {

bool complete(const DayPrices& p) {
  return std::none_of(p.begin(), p.end(), [](double v) { return std::isnan(v); });
}

}  // namespace

DayPrices naive_predict(const data::Dataset& history, Date d, const calendar::HolidayCalendar& cal) {
  if (history.price.empty()) throw InsufficientHistoryError("models", "naive: empty history");
  const int type = calendar::day_type5(d, cal);
  for (Date x = std::min(d - 1, history.last_date()); x >= history.first_date(); x = x - 1) {
    if (calendar::day_type5(x, cal) != type) continue;
    const auto p = history.price.day(x);
    if (complete(p)) return p;
  }
  throw InsufficientHistoryError("models", "naive: no complete day of type " + std::to_string(type) + " before " +
                                               d.to_string());
}

void NaiveModel::fit(const data::Dataset& history, Date as_of) {
  last_ = {};
  if (history.price.empty()) return;
  int found = 0;
  for (Date x = std::min(as_of, history.last_date()); x >= history.first_date() && found < 5; x = x - 1) {
    const int t = calendar::day_type5(x, opts_.cal());
    if (last_[t]) continue;
    const auto p = history.price.day(x);
    if (!complete(p)) continue;
    last_[t] = Kept{x, p};
    ++found;
  }
}

DayPrices NaiveModel::predict_day(Date d, const std::optional<DayExogenous>&) const {
  const int t = calendar::day_type5(d, opts_.cal());
  if (!last_[t] || last_[t]->date >= d)
    throw InsufficientHistoryError("models", "naive: no complete day of type " + std::to_string(t) + " before " +
                                                 d.to_string());
  return last_[t]->prices;
}

}  // namespace epf::models
