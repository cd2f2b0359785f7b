#pragma once

#include <span>
#include <string>
#include <vector>

#include "epf/calendar/holidays.hpp"
#include "epf/core/date.hpp"

namespace epf::calendar {

inline constexpr int kBaseYear = 2010;

struct CalendarFeatures {
  int year = kBaseYear;
  int month = 1;      // 1..12
  int hour = 0;       // 0..23
  int weekday = 0;    // Mon=0..Sun=6
  int weekday10 = 0;  // weekdays 0..6, bridge 7, partial 8, public 9
  int daytype5 = 1;
  int idx_month_hour = 0;    // (month-1)*24 + hour, 0..287
  int idx_weekday_hour = 0;  // weekday10*24 + hour, 0..239
};

CalendarFeatures calendar_features(const HourlyStamp& ts, const HolidayCalendar& cal = HolidayCalendar::german());

// [weekday10, month, hour, year - base_year]
std::vector<double> encode_ordinal(const CalendarFeatures& cf, int base_year = kBaseYear);
// [weekday10, sin(2*pi*m/12), cos(2*pi*m/12), sin(2*pi*h/24), cos(2*pi*h/24), year - base_year]
std::vector<double> encode_circle(const CalendarFeatures& cf, int base_year = kBaseYear);

enum class EmbeddingVariable { Hour, Weekday10, Month, Year, MonthHour, WeekdayHour };

const char* to_string(EmbeddingVariable v);
EmbeddingVariable parse_embedding_variable(const std::string& s);
// Vocabulary size; the year vocabulary is supplied by the caller.
int vocab_size(EmbeddingVariable v, int n_years);
// Embedding width used by the forecasting networks.
int default_embedding_dim(EmbeddingVariable v);
// Human-readable row labels for an embedding table.
std::vector<std::string> category_labels(EmbeddingVariable v, int base_year, int n_years);

// One index per requested variable. Year indices are year - base_year.
std::vector<int> embedding_indices(const CalendarFeatures& cf, std::span<const EmbeddingVariable> vars,
                                   int base_year = kBaseYear);

}  // namespace epf::calendar
