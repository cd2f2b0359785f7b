#include "epf/data/quotes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>

#include "epf/core/error.hpp"
#include "epf/data/csv.hpp"

namespace epf::data {

LoadShape parse_load_shape(const std::string& s) {
  std::string l(s);
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (l == "base") return LoadShape::Base;
  if (l == "peak") return LoadShape::Peak;
  throw ParseError("data", "unknown load shape '" + s + "'");
}

const char* to_string(LoadShape s) { return s == LoadShape::Base ? "base" : "peak"; }

std::vector<FuturesQuote> load_quotes_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty() && trim(line).front() != '#') break;
  }
  const char delim = line.find(';') != std::string::npos ? ';' : ',';
  const auto header = split_line(line, delim);
  auto col = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError("data", "quotes file lacks column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t c_start = col("delivery_start"), c_end = col("delivery_end"), c_shape = col("load_shape"),
                    c_price = col("price_eur_mwh");
  std::vector<FuturesQuote> out;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty() || trim(line).front() == '#') continue;
    const auto f = split_line(line, delim);
    if (f.size() != header.size()) throw ParseError("data", "line " + std::to_string(line_no) + ": wrong field count");
    FuturesQuote q;
    try {
      q.delivery_start = Date::parse(f[c_start]);
      q.delivery_end = Date::parse(f[c_end]);
    } catch (const ParseError& e) {
      throw ParseError("data", "line " + std::to_string(line_no) + ": " + e.what());
    }
    q.shape = parse_load_shape(f[c_shape]);
    q.price = parse_double(f[c_price], delim, line_no);
    if (q.delivery_end < q.delivery_start) {
      throw ParseError("data", "line " + std::to_string(line_no) + ": delivery_end before delivery_start");
    }
    out.push_back(q);
  }
  return out;
}

std::vector<FuturesQuote> load_quotes_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("data", "cannot open '" + path + "'");
  return load_quotes_csv(in);
}

}  // namespace epf::data
