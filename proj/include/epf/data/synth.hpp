#pragma once

#include <cstdint>
#include <iosfwd>

#include "epf/core/date.hpp"
#include "epf/core/kv.hpp"
#include "epf/data/series.hpp"

namespace epf::data {

// Parameters of the synthetic market. Prices follow
//   level(year) + month offset + day-type offset + hourly shape(quarter, day type)
//   - beta_wind * wind - beta_solar * solar + noise.
struct SynthConfig {
  std::uint64_t seed = 1;
  double beta_wind = 0.0012;   // EUR/MWh per MW
  double beta_solar = 0.0008;  // EUR/MWh per MW
  double noise_std = 2.0;
  double base_level = 45.0;
  double year_amp = 1.5;  // yearly level drawn uniformly in +-year_amp
  double month_amp = 5.0;
  double daytype_amp = 8.0;
  double hour_amp = 10.0;
  double wind_capacity = 30000.0;
  double solar_capacity = 25000.0;
  double wind_persistence = 0.97;  // hourly AR(1) coefficient of the wind driver
  bool dst_gaps = true;            // drop the skipped spring hour like exchange data
};

SynthConfig synth_config_from(const KeyValues& kv);
KeyValues to_key_values(const SynthConfig& cfg);

// Deterministic in (seed, start, end, cfg). `seed` overrides cfg.seed.
Dataset synth_generate(std::uint64_t seed, Date start, Date end, const SynthConfig& cfg = {});

// Noise-free calendar component used by the generator; exposed for tests.
double synth_calendar_price(const SynthConfig& cfg, std::uint64_t seed, const HourlyStamp& t);

}  // namespace epf::data
