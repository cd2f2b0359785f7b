#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "epf/core/date.hpp"

namespace epf::data {

// Ordered hourly observations. Stamps strictly increase and all values are finite.
class HourlySeries {
 public:
  HourlySeries() = default;
  HourlySeries(std::vector<HourlyStamp> stamps, std::vector<double> values);

  std::size_t size() const { return stamps_.size(); }
  bool empty() const { return stamps_.empty(); }
  std::span<const HourlyStamp> stamps() const { return stamps_; }
  std::span<const double> values() const { return values_; }
  const HourlyStamp& stamp(std::size_t i) const { return stamps_[i]; }
  double value(std::size_t i) const { return values_[i]; }

  std::optional<double> at(const HourlyStamp& t) const;
  // Index of the first stamp >= t.
  std::size_t lower_bound(const HourlyStamp& t) const;
  // Observations whose date lies in [first, last].
  HourlySeries slice(Date first, Date last) const;
  // The 24 slots of a day; absent hours hold NaN.
  std::array<double, 24> day(Date d) const;

  Date first_date() const { return stamps_.front().date; }
  Date last_date() const { return stamps_.back().date; }

  bool operator==(const HourlySeries&) const = default;

 private:
  std::vector<HourlyStamp> stamps_;
  std::vector<double> values_;
};

// Price series plus optional renewable forecasts on an identical stamp set.
struct Dataset {
  HourlySeries price;
  std::optional<HourlySeries> wind;
  std::optional<HourlySeries> solar;

  bool has_renewables() const { return wind.has_value() && solar.has_value(); }
  Dataset slice(Date first, Date last) const;
  Date first_date() const { return price.first_date(); }
  Date last_date() const { return price.last_date(); }

  bool operator==(const Dataset&) const = default;
};

struct AlignReport {
  std::size_t dropped_price = 0;
  std::size_t dropped_wind = 0;
  std::size_t dropped_solar = 0;
};

// Inner join on stamps. Throws CoverageError when fewer than 90% of the
// price stamps survive.
Dataset align(const HourlySeries& price, const HourlySeries& wind, const HourlySeries& solar,
              AlignReport* report = nullptr);
Dataset align(const Dataset& dataset, AlignReport* report = nullptr);

// Number of valid (non-NaN) entries.
int count_present(const std::array<double, 24>& day);

}  // namespace epf::data
