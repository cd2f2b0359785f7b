#pragma once

#include <cmath>
#include <map>

#include "epf/calendar/holidays.hpp"
#include "epf/core/random.hpp"
#include "epf/models/ltf.hpp"

namespace epf::testing {

// Dummy-model coefficients the median cascade recovers exactly on full
// calendar years of complete days.
//
// Every (quarter, daytype) hourly pattern has 12 positive and 12 negative
// hours whose smallest magnitude is 8 at hours 0 and 12, larger than any
// |c_q + c_m + c_d| (at most 6). Each group median therefore lands halfway
// between min and max of the coarser terms, which are chosen symmetric:
// c_d spans [-1, 1], c_m spans [-2, 2] inside each quarter and c_q + c_m
// spans [-5, 5]. All values are dyadic so the arithmetic is exact.
inline models::LtfDummyCoefficients canonical_dummy_plant() {
  models::LtfDummyCoefficients c;
  c.c_q = {3.0, -1.0, 1.0, -3.0};
  const double within[3] = {2.0, 0.0, -2.0};
  const double rot[4][3] = {{0, 1, 2}, {2, 0, 1}, {1, 2, 0}, {0, 2, 1}};
  for (int q = 0; q < 4; ++q)
    for (int k = 0; k < 3; ++k) c.c_m[q * 3 + k] = within[static_cast<int>(rot[q][k])];
  c.c_d = {1.0, 0.5, 0.25, -0.5, -1.0};
  for (int q = 0; q < 4; ++q)
    for (int t = 0; t < 5; ++t)
      for (int h = 0; h < 12; ++h) {
        const double up = h == 0 ? 8.0 : 8.0 + 0.5 * (1 + (h * 7 + q * 3 + t * 5) % 9);
        const double down = h == 0 ? 8.0 : 8.0 + 0.25 * (1 + (h * 5 + q + t * 3) % 11);
        c.c_h[q][t][h] = up;
        c.c_h[q][t][h + 12] = -down;
      }
  return c;
}

inline double dummy_plant_price(const models::LtfDummyCoefficients& c, const std::map<int, double>& level,
                                const HourlyStamp& t) {
  const int q = static_cast<int>(t.date.quarter()) - 1;
  const int dt = calendar::day_type5(t.date) - 1;
  return level.at(t.date.year()) + c.c_q[q] + c.c_m[t.date.month() - 1] + c.c_d[dt] + c.c_h[q][dt][t.hour];
}

// Hourly structure only: zero on 14 hours, the rest in +- pairs, so every
// coarser group is symmetric about zero and its median stays near zero
// under symmetric noise.
inline models::LtfDummyCoefficients sparse_hourly_plant() {
  models::LtfDummyCoefficients c;
  for (int q = 0; q < 4; ++q)
    for (int t = 0; t < 5; ++t)
      for (int h = 14; h < 19; ++h) {
        c.c_h[q][t][h] = 3.0 * std::sin(h + q) + (t - 2) * 1.5;
        c.c_h[q][t][h + 5] = -c.c_h[q][t][h];
      }
  return c;
}

}  // namespace epf::testing
