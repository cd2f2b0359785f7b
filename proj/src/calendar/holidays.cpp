#include "epf/calendar/holidays.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>

#include "epf/core/error.hpp"
#include "epf/data/csv.hpp"

namespace epf::calendar {

const char* to_string(HolidayKind k) {
  switch (k) {
    case HolidayKind::None:
      return "none";
    case HolidayKind::Bridge:
      return "bridge";
    case HolidayKind::Partial:
      return "partial";
    case HolidayKind::Public:
      return "public";
  }
  return "none";
}

HolidayKind parse_holiday_kind(const std::string& s) {
  if (s == "none") return HolidayKind::None;
  if (s == "bridge") return HolidayKind::Bridge;
  if (s == "partial") return HolidayKind::Partial;
  if (s == "public") return HolidayKind::Public;
  throw ParseError("calendar", "unknown holiday kind '" + s + "'");
}

namespace {

constexpr int kFirstYear = 2010;
constexpr int kLastYear = 2030;

void add_public(int y, std::set<Date>& out) {
  const Date easter = easter_sunday(y);
  out.insert(Date(y, 1, 1));
  out.insert(easter - 2);   // Good Friday
  out.insert(easter);       // Easter Sunday
  out.insert(easter + 1);   // Easter Monday
  out.insert(Date(y, 5, 1));
  out.insert(easter + 39);  // Ascension
  out.insert(easter + 50);  // Pentecost Monday
  out.insert(Date(y, 10, 3));
  out.insert(Date(y, 12, 25));
  out.insert(Date(y, 12, 26));
}

void add_partial(int y, std::set<Date>& out) {
  const Date easter = easter_sunday(y);
  out.insert(Date(y, 8, 15));   // Assumption of Mary
  out.insert(Date(y, 10, 31));  // Reformation Day
  out.insert(Date(y, 11, 1));   // All Saints
  Date prayer(y, 11, 22);       // Wednesday before Nov 23
  prayer = prayer - ((prayer.weekday() - 2 + 7) % 7);
  out.insert(prayer);
  out.insert(easter + 49);  // Pentecost Sunday
  for (unsigned d = 27; d <= 30; ++d) out.insert(Date(y, 12, d));  // Christmas week
}

}  // namespace

const HolidayCalendar& HolidayCalendar::german() {
  static const HolidayCalendar cal = [] {
    HolidayCalendar c;
    c.first_year_ = kFirstYear;
    c.last_year_ = kLastYear;
    std::set<Date> pub, partial;
    for (int y = kFirstYear - 1; y <= kLastYear + 1; ++y) {
      add_public(y, pub);
      add_partial(y, partial);
    }
    const auto is_pub = [&](Date d) { return pub.count(d) > 0; };
    for (Date d(kFirstYear, 1, 1); d <= Date(kLastYear, 12, 31); ++d) {
      HolidayKind k = HolidayKind::None;
      if (is_pub(d)) {
        k = HolidayKind::Public;
      } else if (partial.count(d)) {
        k = HolidayKind::Partial;
      } else {
        const int wd = d.weekday();
        const bool between = is_pub(d - 1) && is_pub(d + 1);
        const bool friday_after_thursday = wd == 4 && is_pub(d - 1);
        const bool monday_before_tuesday = wd == 0 && is_pub(d + 1);
        if (between || friday_after_thursday || monday_before_tuesday) k = HolidayKind::Bridge;
      }
      if (k != HolidayKind::None) c.table_.emplace(d, k);
    }
    return c;
  }();
  return cal;
}

HolidayCalendar HolidayCalendar::from_csv(std::istream& in) {
  HolidayCalendar c;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  int lo = 1 << 30, hi = -(1 << 30);
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = data::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const char delim = line.find(';') != std::string::npos ? ';' : ',';
    const auto f = data::split_line(line, delim);
    if (!header_seen) {
      header_seen = true;
      if (f.size() >= 1 && f[0] == "date") continue;
    }
    if (f.size() != 2) throw ParseError("calendar", "line " + std::to_string(line_no) + ": expected date,kind");
    const Date d = Date::parse(f[0]);
    const HolidayKind k = parse_holiday_kind(f[1]);
    if (k != HolidayKind::None) c.table_[d] = k;
    lo = std::min(lo, d.year());
    hi = std::max(hi, d.year());
  }
  if (lo > hi) throw ParseError("calendar", "holiday table is empty");
  c.first_year_ = lo;
  c.last_year_ = hi;
  return c;
}

HolidayCalendar HolidayCalendar::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("calendar", "cannot open '" + path + "'");
  return from_csv(in);
}

HolidayKind HolidayCalendar::classify(Date d) const {
  if (d.year() < first_year_ || d.year() > last_year_) {
    throw UnsupportedDateError("calendar", d.to_string() + " outside supported holiday range " +
                                               std::to_string(first_year_) + "-" + std::to_string(last_year_));
  }
  const auto it = table_.find(d);
  return it == table_.end() ? HolidayKind::None : it->second;
}

HolidayKind classify_holiday(Date d, const HolidayCalendar& cal) { return cal.classify(d); }

int day_type5(Date d, const HolidayCalendar& cal) {
  const HolidayKind k = cal.classify(d);
  const int wd = d.weekday();
  if (wd == 6 || k == HolidayKind::Public) return 5;
  if (wd == 5 || k == HolidayKind::Partial || k == HolidayKind::Bridge) return 4;
  if (wd == 4) return 3;
  if (wd == 0) return 1;
  return 2;
}

}  // namespace epf::calendar
