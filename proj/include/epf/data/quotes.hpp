#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "epf/core/date.hpp"

namespace epf::data {

enum class LoadShape { Base, Peak };

struct FuturesQuote {
  Date delivery_start;
  Date delivery_end;  // inclusive
  double price = 0.0;
  LoadShape shape = LoadShape::Base;
};

// Columns: delivery_start,delivery_end,load_shape,price_eur_mwh
std::vector<FuturesQuote> load_quotes_csv(std::istream& in);
std::vector<FuturesQuote> load_quotes_csv_file(const std::string& path);

LoadShape parse_load_shape(const std::string& s);
const char* to_string(LoadShape s);

}  // namespace epf::data
