#include "epf/data/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epf/core/error.hpp"

namespace epf::data {

HourlySeries::HourlySeries(std::vector<HourlyStamp> stamps, std::vector<double> values)
    : stamps_(std::move(stamps)), values_(std::move(values)) {
  if (stamps_.size() != values_.size()) {
    throw IntegrityError("data", "stamp and value counts differ");
  }
  for (std::size_t i = 0; i < stamps_.size(); ++i) {
    if (stamps_[i].hour < 0 || stamps_[i].hour > 23) {
      throw IntegrityError("data", "hour index out of range at " + stamps_[i].date.to_string());
    }
    if (!std::isfinite(values_[i])) {
      throw IntegrityError("data", "non-finite value at " + stamps_[i].to_string());
    }
    if (i > 0 && !(stamps_[i - 1] < stamps_[i])) {
      throw IntegrityError("data", "stamps not strictly increasing at " + stamps_[i].to_string());
    }
  }
}

std::size_t HourlySeries::lower_bound(const HourlyStamp& t) const {
  return static_cast<std::size_t>(std::lower_bound(stamps_.begin(), stamps_.end(), t) - stamps_.begin());
}

std::optional<double> HourlySeries::at(const HourlyStamp& t) const {
  const std::size_t i = lower_bound(t);
  if (i < stamps_.size() && stamps_[i] == t) return values_[i];
  return std::nullopt;
}

HourlySeries HourlySeries::slice(Date first, Date last) const {
  const std::size_t b = lower_bound({first, 0});
  const std::size_t e = lower_bound({last + 1, 0});
  HourlySeries out;
  if (b >= e) return out;
  out.stamps_.assign(stamps_.begin() + static_cast<std::ptrdiff_t>(b), stamps_.begin() + static_cast<std::ptrdiff_t>(e));
  out.values_.assign(values_.begin() + static_cast<std::ptrdiff_t>(b), values_.begin() + static_cast<std::ptrdiff_t>(e));
  return out;
}

std::array<double, 24> HourlySeries::day(Date d) const {
  std::array<double, 24> out;
  out.fill(std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = lower_bound({d, 0}); i < stamps_.size() && stamps_[i].date == d; ++i) {
    out[static_cast<std::size_t>(stamps_[i].hour)] = values_[i];
  }
  return out;
}

Dataset Dataset::slice(Date first, Date last) const {
  Dataset out;
  out.price = price.slice(first, last);
  if (wind) out.wind = wind->slice(first, last);
  if (solar) out.solar = solar->slice(first, last);
  return out;
}

Dataset align(const HourlySeries& price, const HourlySeries& wind, const HourlySeries& solar, AlignReport* report) {
  std::vector<HourlyStamp> common;
  {
    std::vector<HourlyStamp> pw;
    std::set_intersection(price.stamps().begin(), price.stamps().end(), wind.stamps().begin(), wind.stamps().end(),
                          std::back_inserter(pw));
    std::set_intersection(pw.begin(), pw.end(), solar.stamps().begin(), solar.stamps().end(),
                          std::back_inserter(common));
  }
  if (price.empty() || static_cast<double>(common.size()) < 0.9 * static_cast<double>(price.size())) {
    throw CoverageError("data", "aligned overlap covers " + std::to_string(common.size()) + " of " +
                                    std::to_string(price.size()) + " price stamps (< 90%)");
  }
  auto pick = [&](const HourlySeries& s) {
    std::vector<double> v;
    v.reserve(common.size());
    std::size_t j = 0;
    for (const auto& t : common) {
      while (s.stamp(j) < t) ++j;
      v.push_back(s.value(j));
    }
    return HourlySeries(common, std::move(v));
  };
  Dataset out;
  out.price = pick(price);
  out.wind = pick(wind);
  out.solar = pick(solar);
  if (report) {
    report->dropped_price = price.size() - common.size();
    report->dropped_wind = wind.size() - common.size();
    report->dropped_solar = solar.size() - common.size();
  }
  return out;
}

Dataset align(const Dataset& dataset, AlignReport* report) {
  if (!dataset.has_renewables()) {
    if (report) *report = {};
    return dataset;
  }
  return align(dataset.price, *dataset.wind, *dataset.solar, report);
}

int count_present(const std::array<double, 24>& day) {
  return static_cast<int>(std::count_if(day.begin(), day.end(), [](double v) { return !std::isnan(v); }));
}

}  // namespace epf::data
