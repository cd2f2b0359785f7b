#include "epf/data/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "epf/calendar/holidays.hpp"
#include "epf/core/error.hpp"
#include "epf/core/random.hpp"
#include "epf/data/csv.hpp"

namespace epf::data {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double bump(double h, double centre, double width) {
  const double z = (h - centre) / width;
  return std::exp(-0.5 * z * z);
}

double year_level(const SynthConfig& cfg, std::uint64_t seed, int year) {
  Rng r(splitmix64(seed ^ 0x5EEDULL) + static_cast<std::uint64_t>(year));
  return cfg.base_level + cfg.year_amp * r.uniform(-1.0, 1.0);
}

double month_offset(const SynthConfig& cfg, int month) {
  const double x = kTwoPi * (month - 1) / 12.0;
  // Winter high, summer low, a small August holiday dip.
  return cfg.month_amp * (std::cos(x) + 0.25 * std::cos(2.0 * x)) - (month == 8 ? 0.3 * cfg.month_amp : 0.0);
}

double daytype_offset(const SynthConfig& cfg, int dt) {
  static constexpr double k[] = {0.15, 0.25, 0.0, -0.55, -1.0};
  return cfg.daytype_amp * k[dt - 1];
}

double hourly_shape(const SynthConfig& cfg, int quarter, int dt, int hour) {
  const double h = hour + 0.5;
  const bool winter = quarter == 1 || quarter == 4;
  const double evening = winter ? 18.5 : 20.0;
  const double ev_amp = winter ? 1.0 : 0.7;
  const double weekday = 0.6 * bump(h, 8.5, 1.8) + ev_amp * bump(h, evening, 2.0) - 0.7 * bump(h, 3.5, 2.2);
  const double weekend = 0.25 * bump(h, 12.0, 2.5) + 0.8 * ev_amp * bump(h, evening + 0.5, 2.2) - 0.9 * bump(h, 5.0, 2.5);
  double s = 0.0;
  switch (dt) {
    case 1:
      s = weekday - 0.25 * bump(h, 3.0, 2.0);
      break;
    case 2:
      s = weekday;
      break;
    case 3:
      s = weekday - 0.3 * bump(h, evening, 2.5);
      break;
    case 4:
      s = 0.65 * weekend + 0.35 * weekday;
      break;
    default:
      s = weekend;
      break;
  }
  return cfg.hour_amp * s;
}

}  // namespace

SynthConfig synth_config_from(const KeyValues& kv) {
  SynthConfig c;
  c.seed = static_cast<std::uint64_t>(kv_int(kv, "seed", static_cast<long long>(c.seed)));
  c.beta_wind = kv_double(kv, "beta_wind", c.beta_wind);
  c.beta_solar = kv_double(kv, "beta_solar", c.beta_solar);
  c.noise_std = kv_double(kv, "noise_std", c.noise_std);
  c.base_level = kv_double(kv, "base_level", c.base_level);
  c.year_amp = kv_double(kv, "year_amp", c.year_amp);
  c.month_amp = kv_double(kv, "month_amp", c.month_amp);
  c.daytype_amp = kv_double(kv, "daytype_amp", c.daytype_amp);
  c.hour_amp = kv_double(kv, "hour_amp", c.hour_amp);
  c.wind_capacity = kv_double(kv, "wind_capacity", c.wind_capacity);
  c.solar_capacity = kv_double(kv, "solar_capacity", c.solar_capacity);
  c.wind_persistence = kv_double(kv, "wind_persistence", c.wind_persistence);
  c.dst_gaps = kv_bool(kv, "dst_gaps", c.dst_gaps);
  if (c.noise_std < 0.0 || c.wind_persistence < 0.0 || c.wind_persistence >= 1.0) {
    throw InvalidArgumentError("data", "synthetic config out of range (noise_std >= 0, 0 <= wind_persistence < 1)");
  }
  return c;
}

KeyValues to_key_values(const SynthConfig& c) {
  return {{"seed", std::to_string(c.seed)},
          {"beta_wind", format_double(c.beta_wind)},
          {"beta_solar", format_double(c.beta_solar)},
          {"noise_std", format_double(c.noise_std)},
          {"base_level", format_double(c.base_level)},
          {"year_amp", format_double(c.year_amp)},
          {"month_amp", format_double(c.month_amp)},
          {"daytype_amp", format_double(c.daytype_amp)},
          {"hour_amp", format_double(c.hour_amp)},
          {"wind_capacity", format_double(c.wind_capacity)},
          {"solar_capacity", format_double(c.solar_capacity)},
          {"wind_persistence", format_double(c.wind_persistence)},
          {"dst_gaps", c.dst_gaps ? "true" : "false"}};
}

double synth_calendar_price(const SynthConfig& cfg, std::uint64_t seed, const HourlyStamp& t) {
  const int dt = calendar::day_type5(t.date);
  return year_level(cfg, seed, t.date.year()) + month_offset(cfg, static_cast<int>(t.date.month())) +
         daytype_offset(cfg, dt) + hourly_shape(cfg, static_cast<int>(t.date.quarter()), dt, t.hour);
}

Dataset synth_generate(std::uint64_t seed, Date start, Date end, const SynthConfig& cfg) {
  if (end < start) throw InvalidArgumentError("data", "synthetic range end precedes start");
  Rng rng(seed);
  const double phi = cfg.wind_persistence;
  const double innov = std::sqrt(1.0 - phi * phi);
  double z = rng.normal();

  std::vector<HourlyStamp> stamps;
  std::vector<double> price, wind, solar;
  const std::size_t n = static_cast<std::size_t>(end - start + 1) * 24;
  stamps.reserve(n);
  price.reserve(n);
  wind.reserve(n);
  solar.reserve(n);

  for (Date d = start; d <= end; ++d) {
    const int m = static_cast<int>(d.month());
    const double day_len = 12.0 + 4.5 * std::cos(kTwoPi * (m - 6) / 12.0);
    const double sunrise = 13.0 - 0.5 * day_len;
    const double season = 0.35 + 0.65 * (day_len - 7.5) / 9.0;
    const double clouds = rng.uniform(0.3, 1.0);
    const double wind_season = 0.08 * std::cos(kTwoPi * d.day_of_year() / 365.0);
    const bool skip_hour2 = cfg.dst_gaps && d == dst_spring_forward(d.year());
    for (int h = 0; h < 24; ++h) {
      z = phi * z + innov * rng.normal();
      const double eps = rng.normal();
      if (skip_hour2 && h == 2) continue;
      const double w = cfg.wind_capacity * std::clamp(0.28 + wind_season + 0.18 * z, 0.0, 1.0);
      const double x = (h + 0.5 - sunrise) / day_len;
      const double s = (x > 0.0 && x < 1.0) ? cfg.solar_capacity * season * clouds * std::pow(std::sin(std::numbers::pi * x), 1.5)
                                            : 0.0;
      const HourlyStamp t{d, h};
      const double p = synth_calendar_price(cfg, seed, t) - cfg.beta_wind * w - cfg.beta_solar * s + cfg.noise_std * eps;
      stamps.push_back(t);
      price.push_back(p);
      wind.push_back(w);
      solar.push_back(s);
    }
  }
  Dataset ds;
  ds.price = HourlySeries(stamps, std::move(price));
  ds.wind = HourlySeries(stamps, std::move(wind));
  ds.solar = HourlySeries(std::move(stamps), std::move(solar));
  return ds;
}

}  // namespace epf::data
