#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "epf/core/date.hpp"
#include "epf/data/series.hpp"

namespace epf::data {

// Parses an ISO-8601 timestamp into Europe/Berlin civil time. Stamps without
// an offset are taken as local already; "Z" or "+HH:MM" offsets are converted.
HourlyStamp parse_timestamp(std::string_view text);

// Reads a delimited file (',' or ';', detected from the header) whose first
// column named "timestamp" (or, failing that, the first column) holds the
// stamp. One series is returned per requested value column, in order.
//
// The duplicated 02:00 hour of the autumn clock change is replaced by the
// mean of its two observations; the skipped spring hour stays absent. Empty
// cells are treated as missing observations.
std::vector<HourlySeries> load_hourly_csv(std::istream& in, const std::vector<std::string>& value_columns);
std::vector<HourlySeries> load_hourly_csv_file(const std::string& path, const std::vector<std::string>& value_columns);

// Writes `timestamp,<names...>` over the union of stamps, blank where a series
// has no observation. Lines in `comments` are emitted first, prefixed by "# ".
void write_csv(std::ostream& out, const std::vector<std::string>& names, const std::vector<const HourlySeries*>& series,
               const std::vector<std::string>& comments = {});

// Shortest decimal representation that round-trips.
std::string format_double(double v);

// Splits one delimited line; quotes are not supported (none of the formats use them).
std::vector<std::string> split_line(std::string_view line, char delim);
std::string_view trim(std::string_view s);
double parse_double(std::string_view text, char delim, std::size_t line_no);

}  // namespace epf::data
