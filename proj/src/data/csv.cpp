#include "epf/data/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "epf/core/error.hpp"

namespace epf::data {

namespace {

bool digits(std::string_view s, int& out) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) return false;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return true;
}

[[noreturn]] void bad_stamp(std::string_view text) {
  throw ParseError("data", "malformed timestamp '" + std::string(text) + "'");
}

}  // namespace

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_line(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    out.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

HourlyStamp parse_timestamp(std::string_view text) {
  text = trim(text);
  if (text.size() < 16) bad_stamp(text);
  Date date;
  try {
    date = Date::parse(text.substr(0, 10));
  } catch (const ParseError&) {
    bad_stamp(text);
  }
  if (text[10] != 'T' && text[10] != ' ') bad_stamp(text);
  int hour = 0, minute = 0, second = 0;
  if (!digits(text.substr(11, 2), hour) || text[13] != ':' || !digits(text.substr(14, 2), minute)) bad_stamp(text);
  std::string_view rest = text.substr(16);
  if (rest.size() >= 3 && rest[0] == ':') {
    if (!digits(rest.substr(1, 2), second)) bad_stamp(text);
    rest.remove_prefix(3);
  }
  if (hour > 23 || minute != 0 || second != 0) bad_stamp(text);

  if (rest.empty()) return {date, hour};

  int offset_minutes = 0;
  if (rest == "Z") {
    offset_minutes = 0;
  } else if (rest[0] == '+' || rest[0] == '-') {
    int oh = 0, om = 0;
    std::string_view off = rest.substr(1);
    if (off.size() == 5 && off[2] == ':') {
      if (!digits(off.substr(0, 2), oh) || !digits(off.substr(3, 2), om)) bad_stamp(text);
    } else if (off.size() == 4) {
      if (!digits(off.substr(0, 2), oh) || !digits(off.substr(2, 2), om)) bad_stamp(text);
    } else if (off.size() == 2) {
      if (!digits(off, oh)) bad_stamp(text);
    } else {
      bad_stamp(text);
    }
    offset_minutes = (rest[0] == '-' ? -1 : 1) * (oh * 60 + om);
  } else {
    bad_stamp(text);
  }
  if (offset_minutes % 60 != 0) {
    throw ParseError("data", "sub-hourly UTC offset in '" + std::string(text) + "'");
  }
  // Local wall time -> UTC -> Berlin wall time.
  int utc_hour = hour - offset_minutes / 60;
  Date utc_date = date;
  while (utc_hour < 0) {
    utc_hour += 24;
    utc_date = utc_date - 1;
  }
  while (utc_hour > 23) {
    utc_hour -= 24;
    utc_date = utc_date + 1;
  }
  int local_hour = utc_hour + berlin_utc_offset_hours(utc_date, utc_hour);
  Date local_date = utc_date;
  if (local_hour > 23) {
    local_hour -= 24;
    local_date = local_date + 1;
  }
  return {local_date, local_hour};
}

double parse_double(std::string_view text, char delim, std::size_t line_no) {
  std::string s(trim(text));
  if (delim == ';') std::replace(s.begin(), s.end(), ',', '.');
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParseError("data", "line " + std::to_string(line_no) + ": unparseable value '" + s + "'");
  }
  return v;
}

std::vector<HourlySeries> load_hourly_csv(std::istream& in, const std::vector<std::string>& value_columns) {
  std::string line;
  std::size_t line_no = 0;
  // Skip comment lines before the header.
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty() && trim(line).front() != '#') break;
  }
  if (trim(line).empty() || trim(line).front() == '#') {
    throw ParseError("data", "missing header row");
  }
  const char delim = line.find(';') != std::string::npos ? ';' : ',';
  const auto header = split_line(line, delim);
  std::size_t ts_col = 0;
  if (auto it = std::find(header.begin(), header.end(), "timestamp"); it != header.end()) {
    ts_col = static_cast<std::size_t>(it - header.begin());
  }
  std::vector<std::size_t> cols;
  for (const auto& name : value_columns) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("data", "column '" + name + "' not found in header");
    cols.push_back(static_cast<std::size_t>(it - header.begin()));
  }

  std::vector<std::map<HourlyStamp, std::vector<double>>> obs(cols.size());
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = split_line(line, delim);
    if (fields.size() != header.size()) {
      throw ParseError("data", "line " + std::to_string(line_no) + ": expected " + std::to_string(header.size()) +
                                   " fields, got " + std::to_string(fields.size()));
    }
    HourlyStamp stamp;
    try {
      stamp = parse_timestamp(fields[ts_col]);
    } catch (const ParseError& e) {
      throw ParseError("data", "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (stamp.date == dst_spring_forward(stamp.date.year()) && stamp.hour == 2) {
      throw IntegrityError("data", "line " + std::to_string(line_no) + ": local time " + stamp.to_string() +
                                       " does not exist (spring clock change)");
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (fields[cols[c]].empty()) continue;
      obs[c][stamp].push_back(parse_double(fields[cols[c]], delim, line_no));
    }
  }

  std::vector<HourlySeries> out;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::vector<HourlyStamp> stamps;
    std::vector<double> values;
    stamps.reserve(obs[c].size());
    values.reserve(obs[c].size());
    for (const auto& [stamp, vals] : obs[c]) {
      if (vals.size() == 1) {
        values.push_back(vals[0]);
      } else if (vals.size() == 2 && stamp.hour == 2 && stamp.date == dst_fall_back(stamp.date.year())) {
        values.push_back(0.5 * (vals[0] + vals[1]));
      } else {
        throw IntegrityError("data", "duplicate stamp " + stamp.to_string() + " in column '" + value_columns[c] + "'");
      }
      stamps.push_back(stamp);
    }
    out.emplace_back(std::move(stamps), std::move(values));
  }
  return out;
}

std::vector<HourlySeries> load_hourly_csv_file(const std::string& path, const std::vector<std::string>& value_columns) {
  std::ifstream in(path);
  if (!in) throw ParseError("data", "cannot open '" + path + "'");
  return load_hourly_csv(in, value_columns);
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

void write_csv(std::ostream& out, const std::vector<std::string>& names, const std::vector<const HourlySeries*>& series,
               const std::vector<std::string>& comments) {
  if (names.size() != series.size()) throw InvalidArgumentError("data", "names and series differ in count");
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "timestamp";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  std::set<HourlyStamp> all;
  for (const auto* s : series) all.insert(s->stamps().begin(), s->stamps().end());
  std::vector<std::size_t> cursor(series.size(), 0);
  for (const auto& t : all) {
    out << t.to_string();
    for (std::size_t k = 0; k < series.size(); ++k) {
      out << ',';
      const auto& s = *series[k];
      if (cursor[k] < s.size() && s.stamp(cursor[k]) == t) {
        out << format_double(s.value(cursor[k]));
        ++cursor[k];
      }
    }
    out << '\n';
  }
}

}  // namespace epf::data
