#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>

#include "epf/core/date.hpp"

namespace epf::calendar {

enum class HolidayKind { None, Bridge, Partial, Public };

const char* to_string(HolidayKind k);
HolidayKind parse_holiday_kind(const std::string& s);

// Table-driven holiday classification. The built-in table covers Germany
// 2010-2030 (nationwide public holidays, partial/regional holidays, the
// Christmas week, and bridge days derived from the public ones).
class HolidayCalendar {
 public:
  static const HolidayCalendar& german();
  // Rows `date,kind`; the supported range becomes the years present in the file.
  static HolidayCalendar from_csv(std::istream& in);
  static HolidayCalendar from_csv_file(const std::string& path);

  // Throws UnsupportedDateError outside [first_year, last_year].
  HolidayKind classify(Date d) const;
  int first_year() const { return first_year_; }
  int last_year() const { return last_year_; }

 private:
  std::unordered_map<Date, HolidayKind> table_;
  int first_year_ = 0;
  int last_year_ = -1;
};

// German defaults; precedence public > partial > bridge.
HolidayKind classify_holiday(Date d, const HolidayCalendar& cal = HolidayCalendar::german());

// Day-type clusters 1..5: Mondays; Tue-Thu; Fridays; Saturdays, partial
// holidays and bridge days; Sundays and public holidays. The Sunday/public
// rule is tested before the Saturday/partial/bridge rule.
int day_type5(Date d, const HolidayCalendar& cal = HolidayCalendar::german());

}  // namespace epf::calendar
