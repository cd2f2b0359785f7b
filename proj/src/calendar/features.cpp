#include "epf/calendar/features.hpp"

#include <cmath>
#include <numbers>

#include "epf/core/error.hpp"

namespace epf::calendar {

CalendarFeatures calendar_features(const HourlyStamp& ts, const HolidayCalendar& cal) {
  CalendarFeatures cf;
  cf.year = ts.date.year();
  cf.month = static_cast<int>(ts.date.month());
  cf.hour = ts.hour;
  cf.weekday = ts.date.weekday();
  switch (cal.classify(ts.date)) {
    case HolidayKind::None:
      cf.weekday10 = cf.weekday;
      break;
    case HolidayKind::Bridge:
      cf.weekday10 = 7;
      break;
    case HolidayKind::Partial:
      cf.weekday10 = 8;
      break;
    case HolidayKind::Public:
      cf.weekday10 = 9;
      break;
  }
  cf.daytype5 = day_type5(ts.date, cal);
  cf.idx_month_hour = (cf.month - 1) * 24 + cf.hour;
  cf.idx_weekday_hour = cf.weekday10 * 24 + cf.hour;
  return cf;
}

std::vector<double> encode_ordinal(const CalendarFeatures& cf, int base_year) {
  return {static_cast<double>(cf.weekday10), static_cast<double>(cf.month), static_cast<double>(cf.hour),
          static_cast<double>(cf.year - base_year)};
}

std::vector<double> encode_circle(const CalendarFeatures& cf, int base_year) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double m = two_pi * cf.month / 12.0;
  const double h = two_pi * cf.hour / 24.0;
  return {static_cast<double>(cf.weekday10), std::sin(m), std::cos(m), std::sin(h), std::cos(h),
          static_cast<double>(cf.year - base_year)};
}

const char* to_string(EmbeddingVariable v) {
  switch (v) {
    case EmbeddingVariable::Hour:
      return "hour";
    case EmbeddingVariable::Weekday10:
      return "weekday10";
    case EmbeddingVariable::Month:
      return "month";
    case EmbeddingVariable::Year:
      return "year";
    case EmbeddingVariable::MonthHour:
      return "month_hour";
    case EmbeddingVariable::WeekdayHour:
      return "weekday_hour";
  }
  return "?";
}

EmbeddingVariable parse_embedding_variable(const std::string& s) {
  for (auto v : {EmbeddingVariable::Hour, EmbeddingVariable::Weekday10, EmbeddingVariable::Month,
                 EmbeddingVariable::Year, EmbeddingVariable::MonthHour, EmbeddingVariable::WeekdayHour}) {
    if (s == to_string(v)) return v;
  }
  throw ParseError("calendar", "unknown embedding variable '" + s + "'");
}

int vocab_size(EmbeddingVariable v, int n_years) {
  switch (v) {
    case EmbeddingVariable::Hour:
      return 24;
    case EmbeddingVariable::Weekday10:
      return 10;
    case EmbeddingVariable::Month:
      return 12;
    case EmbeddingVariable::Year:
      return n_years;
    case EmbeddingVariable::MonthHour:
      return 288;
    case EmbeddingVariable::WeekdayHour:
      return 240;
  }
  return 0;
}

int default_embedding_dim(EmbeddingVariable v) {
  switch (v) {
    case EmbeddingVariable::Hour:
      return 6;
    case EmbeddingVariable::Weekday10:
      return 2;
    case EmbeddingVariable::Month:
    case EmbeddingVariable::Year:
      return 3;
    case EmbeddingVariable::MonthHour:
      return 10;
    case EmbeddingVariable::WeekdayHour:
      return 15;
  }
  return 1;
}

namespace {

const char* const kWeekday10[] = {"Monday", "Tuesday", "Wednesday",       "Thursday",      "Friday",
                                  "Saturday", "Sunday", "bridge day", "partial holiday", "public holiday"};
const char* const kMonths[] = {"January", "February", "March",     "April",   "May",      "June",
                               "July",    "August",   "September", "October", "November", "December"};

std::string hh(int h) { return (h < 10 ? "h0" : "h") + std::to_string(h); }

}  // namespace

std::vector<std::string> category_labels(EmbeddingVariable v, int base_year, int n_years) {
  std::vector<std::string> out;
  switch (v) {
    case EmbeddingVariable::Hour:
      for (int h = 0; h < 24; ++h) out.push_back(hh(h));
      break;
    case EmbeddingVariable::Weekday10:
      out.assign(std::begin(kWeekday10), std::end(kWeekday10));
      break;
    case EmbeddingVariable::Month:
      out.assign(std::begin(kMonths), std::end(kMonths));
      break;
    case EmbeddingVariable::Year:
      for (int y = 0; y < n_years; ++y) out.push_back(std::to_string(base_year + y));
      break;
    case EmbeddingVariable::MonthHour:
      for (int m = 0; m < 12; ++m)
        for (int h = 0; h < 24; ++h) out.push_back(std::string(kMonths[m]).substr(0, 3) + "-" + hh(h));
      break;
    case EmbeddingVariable::WeekdayHour:
      for (int w = 0; w < 10; ++w)
        for (int h = 0; h < 24; ++h) out.push_back(std::string(kWeekday10[w]) + "-" + hh(h));
      break;
  }
  return out;
}

std::vector<int> embedding_indices(const CalendarFeatures& cf, std::span<const EmbeddingVariable> vars,
                                   int base_year) {
  std::vector<int> out;
  out.reserve(vars.size());
  for (auto v : vars) {
    switch (v) {
      case EmbeddingVariable::Hour:
        out.push_back(cf.hour);
        break;
      case EmbeddingVariable::Weekday10:
        out.push_back(cf.weekday10);
        break;
      case EmbeddingVariable::Month:
        out.push_back(cf.month - 1);
        break;
      case EmbeddingVariable::Year:
        out.push_back(cf.year - base_year);
        break;
      case EmbeddingVariable::MonthHour:
        out.push_back(cf.idx_month_hour);
        break;
      case EmbeddingVariable::WeekdayHour:
        out.push_back(cf.idx_weekday_hour);
        break;
    }
  }
  return out;
}

}  // namespace epf::calendar
