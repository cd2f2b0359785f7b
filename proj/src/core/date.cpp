#include "epf/core/date.hpp"

#include <charconv>
#include <cstdio>

#include "epf/core/error.hpp"

namespace epf {

namespace chr = std::chrono;

Date::Date(int y, unsigned m, unsigned d) {
  const chr::year_month_day ymd{chr::year{y}, chr::month{m}, chr::day{d}};
  if (!ymd.ok()) {
    throw ParseError("date", "invalid calendar date " + std::to_string(y) + "-" + std::to_string(m) + "-" +
                                 std::to_string(d));
  }
  serial_ = chr::sys_days{ymd}.time_since_epoch().count();
}

namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

Date Date::parse(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !parse_int(text.substr(0, 4), y) ||
      !parse_int(text.substr(5, 2), m) || !parse_int(text.substr(8, 2), d) || m < 1 || d < 1) {
    throw ParseError("date", "malformed date '" + std::string(text) + "' (expected YYYY-MM-DD)");
  }
  return Date(y, static_cast<unsigned>(m), static_cast<unsigned>(d));
}

int Date::weekday() const {
  const unsigned iso = std::chrono::weekday{chr::sys_days{chr::days{serial_}}}.iso_encoding();  // Mon=1..Sun=7
  return static_cast<int>(iso) - 1;
}

int Date::day_of_year() const { return *this - Date(year(), 1, 1); }

std::string Date::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", year(), month(), day());
  return buf;
}

Date Date::minus_years(int years) const {
  const int y = year() - years;
  const unsigned m = month();
  const unsigned d = std::min(day(), days_in_month(y, m));
  return Date(y, m, d);
}

bool is_leap_year(int y) { return chr::year{y}.is_leap(); }

unsigned days_in_month(int y, unsigned m) {
  return static_cast<unsigned>(chr::year_month_day_last{chr::year{y}, chr::month_day_last{chr::month{m}}}.day());
}

Date easter_sunday(int y) {
  // Anonymous Gregorian algorithm.
  const int a = y % 19, b = y / 100, c = y % 100;
  const int d = b / 4, e = b % 4;
  const int f = (b + 8) / 25, g = (b - f + 1) / 3;
  const int h = (19 * a + b - d - g + 15) % 30;
  const int i = c / 4, k = c % 4;
  const int l = (32 + 2 * e + 2 * i - h - k) % 7;
  const int m = (a + 11 * h + 22 * l) / 451;
  const int month = (h + l - 7 * m + 114) / 31;
  const int day = ((h + l - 7 * m + 114) % 31) + 1;
  return Date(y, static_cast<unsigned>(month), static_cast<unsigned>(day));
}

Date last_sunday(int y, unsigned m) {
  Date d(y, m, days_in_month(y, m));
  return d - ((d.weekday() + 1) % 7);
}

int berlin_utc_offset_hours(Date utc_date, int utc_hour) {
  // Summer time runs from 01:00 UTC on the last Sunday of March until
  // 01:00 UTC on the last Sunday of October.
  const int y = utc_date.year();
  const HourlyStamp t{utc_date, utc_hour};
  const HourlyStamp start{dst_spring_forward(y), 1};
  const HourlyStamp end{dst_fall_back(y), 1};
  return (t >= start && t < end) ? 2 : 1;
}

std::string HourlyStamp::to_string() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "T%02d:00", hour);
  return date.to_string() + buf;
}

}  // namespace epf
