#pragma once

#include <string>
#include <vector>

#include "epf/data/quotes.hpp"
#include "epf/data/series.hpp"
#include "epf/models/model.hpp"

namespace epf::hpfc {

// Hourly profile with 24 slots on every day of the horizon.
struct HourlyProfile {
  data::HourlySeries series;
  std::string model_id;
};

struct ForwardCurve {
  data::HourlySeries series;
  std::string model_id;
  std::string quote_set_id;
};

// Mon-Fri, hours first_hour..last_hour inclusive.
struct PeakWindow {
  int first_hour = 8;
  int last_hour = 19;
  bool contains(const HourlyStamp& t) const {
    return t.date.weekday() < 5 && t.hour >= first_hour && t.hour <= last_hour;
  }
};

// Calendar-only evaluation of a trained model over [start, end].
HourlyProfile build_profile(const models::ForecastModel& model, Date start, Date end);

// Additive shift, month quotes first, then the coarser quotes on the hours
// no month quote covers. A peak quote moves the free peak hours of its
// period; the base quote of the same period then moves the free off-peak
// hours (all free hours when there is no peak quote).
ForwardCurve shift_to_quotes(const HourlyProfile& profile, const std::vector<data::FuturesQuote>& quotes,
                             const std::string& quote_set_id = "", const PeakWindow& peak = {});

struct QuoteResidual {
  data::FuturesQuote quote;
  double period_mean = 0.0;
  double residual = 0.0;  // period_mean - price
};

struct ArbitrageReport {
  std::vector<QuoteResidual> rows;
  double max_abs_residual() const;
  bool pass(double tol = 1e-9) const { return max_abs_residual() <= tol; }
};

ArbitrageReport verify_no_arbitrage(const data::HourlySeries& curve, const std::vector<data::FuturesQuote>& quotes,
                                    const PeakWindow& peak = {});

// True when [start, end] is exactly one calendar month.
bool is_month_period(Date start, Date end);

}  // namespace epf::hpfc
