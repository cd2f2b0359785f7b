#include "epf/hpfc/hpfc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "epf/core/error.hpp"
#include "epf/data/csv.hpp"

namespace epf::hpfc {

using data::FuturesQuote;
using data::LoadShape;

HourlyProfile build_profile(const models::ForecastModel& model, Date start, Date end) {
  if (end < start) throw InvalidArgumentError("hpfc", "profile horizon ends before it starts");
  if (model.uses_renewables())
    throw FeatureError("hpfc", model.id() + " needs renewable forecasts; profiles are calendar-only");
  std::vector<HourlyStamp> st;
  std::vector<double> v;
  st.reserve(static_cast<std::size_t>(end - start + 1) * 24);
  v.reserve(st.capacity());
  for (Date d = start; d <= end; ++d) {
    const auto p = model.predict_day(d);
    for (int h = 0; h < 24; ++h) {
      st.push_back({d, h});
      v.push_back(p[h]);
    }
  }
  return {data::HourlySeries(std::move(st), std::move(v)), model.id()};
}

bool is_month_period(Date start, Date end) {
  return start.day() == 1 && end.year() == start.year() && end.month() == start.month() && (end + 1).day() == 1;
}

namespace {

std::string describe(const FuturesQuote& q) {
  return std::string(data::to_string(q.shape)) + " " + q.delivery_start.to_string() + ".." + q.delivery_end.to_string();
}

struct Period {
  std::size_t begin = 0, end = 0;  // hour index range of the curve
};

bool overlaps(const FuturesQuote& a, const FuturesQuote& b) {
  return !(a.delivery_end < b.delivery_start || b.delivery_end < a.delivery_start);
}

}  // namespace

ForwardCurve shift_to_quotes(const HourlyProfile& profile, const std::vector<FuturesQuote>& quotes,
                             const std::string& quote_set_id, const PeakWindow& peak) {
  const auto& s = profile.series;
  if (s.empty()) throw InvalidArgumentError("hpfc", "empty profile");
  std::vector<double> v(s.values().begin(), s.values().end());
  std::vector<char> is_peak(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) is_peak[i] = peak.contains(s.stamp(i));
  // Hours already pinned by a finer quote, per load shape.
  std::vector<char> locked_base(s.size(), 0), locked_peak(s.size(), 0);

  auto period_of = [&](const FuturesQuote& q) {
    if (q.delivery_end < q.delivery_start) throw InvalidArgumentError("hpfc", describe(q) + " ends before it starts");
    if (q.delivery_start < s.first_date() || q.delivery_end > s.last_date())
      throw CoverageError("hpfc", describe(q) + " lies outside the profile horizon " + s.first_date().to_string() +
                                      ".." + s.last_date().to_string());
    return Period{s.lower_bound({q.delivery_start, 0}), s.lower_bound({q.delivery_end + 1, 0})};
  };

  std::vector<FuturesQuote> month, coarse;
  for (const auto& q : quotes) (is_month_period(q.delivery_start, q.delivery_end) ? month : coarse).push_back(q);
  for (auto* tier : {&month, &coarse})
    for (std::size_t a = 0; a < tier->size(); ++a)
      for (std::size_t b = a + 1; b < tier->size(); ++b)
        if ((*tier)[a].shape == (*tier)[b].shape && overlaps((*tier)[a], (*tier)[b]))
          throw InvalidArgumentError("hpfc", "overlapping quotes " + describe((*tier)[a]) + " and " +
                                                 describe((*tier)[b]));
  for (const auto& c : coarse)
    for (const auto& m : month)
      if (overlaps(c, m) && (m.delivery_start < c.delivery_start || m.delivery_end > c.delivery_end))
        throw InvalidArgumentError("hpfc", describe(m) + " straddles the boundary of " + describe(c));

  // Moves the free hours selected by `pick` so that the mean over the hours
  // selected by `target` matches price. Returns the shifted hour indices.
  auto adjust = [&](const FuturesQuote& q, Period p, auto target, auto pick) {
    double sum = 0.0;
    std::size_t n = 0, free = 0;
    for (std::size_t i = p.begin; i < p.end; ++i) {
      if (!target(i)) continue;
      sum += v[i];
      ++n;
      free += pick(i);
    }
    if (n == 0) throw InvalidArgumentError("hpfc", describe(q) + " covers no delivery hours");
    const double gap = q.price * static_cast<double>(n) - sum;
    // A quote the curve already meets is left alone so reapplying is a no-op.
    if (std::abs(gap) <= 1e-12 * std::max(1.0, std::abs(q.price)) * static_cast<double>(n)) return;
    if (free == 0)
      throw ArbitrageConflictError("hpfc", describe(q) + " is fixed by finer quotes at mean " +
                                               data::format_double(sum / n) + ", residual " +
                                               data::format_double(sum / n - q.price));
    const double c = gap / static_cast<double>(free);
    for (std::size_t i = p.begin; i < p.end; ++i)
      if (target(i) && pick(i)) v[i] += c;
  };

  for (auto* tier : {&month, &coarse}) {
    std::vector<char> lock_b = locked_base, lock_p = locked_peak;
    for (const auto& q : *tier) {
      if (q.shape != LoadShape::Peak) continue;
      const Period p = period_of(q);
      adjust(q, p, [&](std::size_t i) { return is_peak[i] != 0; },
             [&](std::size_t i) { return is_peak[i] && !locked_base[i] && !locked_peak[i]; });
      for (std::size_t i = p.begin; i < p.end; ++i)
        if (is_peak[i]) lock_p[i] = 1;
    }
    for (const auto& q : *tier) {
      if (q.shape != LoadShape::Base) continue;
      const Period p = period_of(q);
      bool has_peak = false;
      for (const auto& o : *tier)
        has_peak = has_peak || (o.shape == LoadShape::Peak && o.delivery_start == q.delivery_start &&
                                o.delivery_end == q.delivery_end);
      adjust(q, p, [](std::size_t) { return true; }, [&](std::size_t i) {
        if (locked_base[i]) return false;
        if (is_peak[i] && (locked_peak[i] || has_peak)) return false;
        return true;
      });
      for (std::size_t i = p.begin; i < p.end; ++i) lock_b[i] = 1;
    }
    locked_base = std::move(lock_b);
    locked_peak = std::move(lock_p);
  }

  std::vector<HourlyStamp> st(s.stamps().begin(), s.stamps().end());
  return {data::HourlySeries(std::move(st), std::move(v)), profile.model_id, quote_set_id};
}

double ArbitrageReport::max_abs_residual() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, std::abs(r.residual));
  return m;
}

ArbitrageReport verify_no_arbitrage(const data::HourlySeries& curve, const std::vector<FuturesQuote>& quotes,
                                    const PeakWindow& peak) {
  ArbitrageReport rep;
  for (const auto& q : quotes) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = curve.lower_bound({q.delivery_start, 0}); i < curve.size(); ++i) {
      const auto& t = curve.stamp(i);
      if (t.date > q.delivery_end) break;
      if (q.shape == LoadShape::Peak && !peak.contains(t)) continue;
      sum += curve.value(i);
      ++n;
    }
    const double mean = n ? sum / static_cast<double>(n) : std::nan("");
    rep.rows.push_back({q, mean, n ? mean - q.price : std::numeric_limits<double>::infinity()});
  }
  return rep;
}

}  // namespace epf::hpfc
