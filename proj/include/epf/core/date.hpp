#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace epf {

// Civil calendar date (proleptic Gregorian), stored as days since 1970-01-01.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days d) : serial_(d.time_since_epoch().count()) {}
  Date(int year, unsigned month, unsigned day);

  static constexpr Date from_serial(std::int32_t serial) {
    Date d;
    d.serial_ = serial;
    return d;
  }
  // Accepts YYYY-MM-DD.
  static Date parse(std::string_view text);

  std::chrono::year_month_day ymd() const {
    return std::chrono::year_month_day{std::chrono::sys_days{std::chrono::days{serial_}}};
  }
  int year() const { return static_cast<int>(ymd().year()); }
  unsigned month() const { return static_cast<unsigned>(ymd().month()); }
  unsigned day() const { return static_cast<unsigned>(ymd().day()); }
  // Monday = 0 ... Sunday = 6.
  int weekday() const;
  int day_of_year() const;  // 0-based
  unsigned quarter() const { return (month() - 1) / 3 + 1; }

  constexpr std::int32_t serial() const { return serial_; }
  std::string to_string() const;

  constexpr Date operator+(int days) const { return from_serial(serial_ + days); }
  constexpr Date operator-(int days) const { return from_serial(serial_ - days); }
  constexpr int operator-(Date other) const { return serial_ - other.serial_; }
  Date& operator++() {
    ++serial_;
    return *this;
  }

  // Same month/day `years` earlier; Feb 29 maps to Feb 28 in non-leap years.
  Date minus_years(int years) const;

  constexpr auto operator<=>(const Date&) const = default;

 private:
  std::int32_t serial_ = 0;
};

bool is_leap_year(int year);
unsigned days_in_month(int year, unsigned month);
Date easter_sunday(int year);
// Last Sunday of the given month.
Date last_sunday(int year, unsigned month);

// Europe/Berlin daylight saving: the day on which local 02:00-03:00 is skipped
// and the day on which it occurs twice.
inline Date dst_spring_forward(int year) { return last_sunday(year, 3); }
inline Date dst_fall_back(int year) { return last_sunday(year, 10); }
// Europe/Berlin offset from UTC in hours for a UTC instant given as
// (utc date, utc hour).
int berlin_utc_offset_hours(Date utc_date, int utc_hour);

// One delivery hour in local civil time; hour h covers [h:00, h+1:00).
struct HourlyStamp {
  Date date;
  int hour = 0;

  constexpr auto operator<=>(const HourlyStamp&) const = default;
  std::string to_string() const;  // YYYY-MM-DDTHH:00
};

}  // namespace epf

template <>
struct std::hash<epf::Date> {
  std::size_t operator()(epf::Date d) const noexcept { return std::hash<std::int32_t>{}(d.serial()); }
};
