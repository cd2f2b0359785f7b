#include "epf/models/features.hpp"

#include <algorithm>

#include "epf/core/error.hpp"

namespace epf::models {

using calendar::EmbeddingVariable;

std::vector<EmbeddingVariable> FeatureSpec::embedding_variables() const {
  if (encoder != Encoder::Embedding) return {};
  std::vector<EmbeddingVariable> v{EmbeddingVariable::Hour, EmbeddingVariable::Weekday10, EmbeddingVariable::Month};
  if (year) v.push_back(EmbeddingVariable::Year);
  if (cross) {
    v.push_back(EmbeddingVariable::MonthHour);
    v.push_back(EmbeddingVariable::WeekdayHour);
  }
  return v;
}

int FeatureSpec::n_continuous() const {
  int n = renewables ? 2 : 0;
  if (encoder == Encoder::Ordinal) n += year ? 4 : 3;
  if (encoder == Encoder::Circle) n += year ? 6 : 5;
  return n;
}

nn::Samples empty_samples(const FeatureSpec& spec) {
  nn::Samples s;
  s.n_continuous = spec.n_continuous();
  s.n_indices = spec.embedding_variables().size();
  return s;
}

void append_row(const FeatureSpec& spec, const FeatureContext& ctx, const calendar::CalendarFeatures& cf, double wind,
                double solar, double target, nn::Samples& out) {
  if (spec.renewables) {
    out.x.push_back(ctx.wind->apply(wind));
    out.x.push_back(ctx.solar->apply(solar));
  }
  if (spec.encoder == Encoder::Ordinal || spec.encoder == Encoder::Circle) {
    auto v = spec.encoder == Encoder::Ordinal ? calendar::encode_ordinal(cf) : calendar::encode_circle(cf);
    if (!spec.year) v.pop_back();
    out.x.insert(out.x.end(), v.begin(), v.end());
  } else {
    for (auto var : spec.embedding_variables()) {
      int ix = 0;
      switch (var) {
        case EmbeddingVariable::Hour: ix = cf.hour; break;
        case EmbeddingVariable::Weekday10: ix = cf.weekday10; break;
        case EmbeddingVariable::Month: ix = cf.month - 1; break;
        case EmbeddingVariable::Year: ix = std::clamp(cf.year - ctx.first_year, 0, ctx.n_years - 1); break;
        case EmbeddingVariable::MonthHour: ix = cf.idx_month_hour; break;
        case EmbeddingVariable::WeekdayHour: ix = cf.idx_weekday_hour; break;
      }
      out.idx.push_back(ix);
    }
  }
  out.y.push_back(target);
}

SampleSet build_samples(const data::Dataset& history, const FeatureSpec& spec, const calendar::HolidayCalendar& cal) {
  if (history.price.empty()) throw InsufficientHistoryError("models", "no history to build samples from");
  if (spec.renewables && !history.has_renewables())
    throw FeatureError("models", "renewable features requested but the dataset has none");
  SampleSet set;
  set.samples = empty_samples(spec);
  auto& ctx = set.context;
  ctx.first_year = history.first_date().year();
  ctx.n_years = history.last_date().year() - ctx.first_year + 1;

  const auto& price = history.price;
  // Renewables share the price stamps once aligned; look them up by stamp
  // otherwise so unaligned inputs still work.
  const bool aligned = spec.renewables && history.wind->stamps().size() == price.size() &&
                       history.solar->stamps().size() == price.size() &&
                       std::equal(price.stamps().begin(), price.stamps().end(), history.wind->stamps().begin()) &&
                       std::equal(price.stamps().begin(), price.stamps().end(), history.solar->stamps().begin());
  std::vector<double> wind, solar;
  std::vector<std::size_t> rows;
  rows.reserve(price.size());
  for (std::size_t i = 0; i < price.size(); ++i) {
    if (spec.renewables) {
      std::optional<double> w, s;
      if (aligned) {
        w = history.wind->value(i);
        s = history.solar->value(i);
      } else {
        w = history.wind->at(price.stamp(i));
        s = history.solar->at(price.stamp(i));
      }
      if (!w || !s) continue;
      wind.push_back(*w);
      solar.push_back(*s);
    }
    rows.push_back(i);
  }
  if (spec.renewables) {
    ctx.wind = data::fit_scaler(wind);
    ctx.solar = data::fit_scaler(solar);
  }

  set.samples.reserve(rows.size());
  set.stamps.reserve(rows.size());
  Date cur_date;
  calendar::CalendarFeatures day_cf;
  bool have_day = false;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& st = price.stamp(rows[k]);
    if (!have_day || st.date != cur_date) {
      day_cf = calendar::calendar_features({st.date, 0}, cal);
      cur_date = st.date;
      have_day = true;
    }
    auto cf = day_cf;
    cf.hour = st.hour;
    cf.idx_month_hour = (cf.month - 1) * 24 + st.hour;
    cf.idx_weekday_hour = cf.weekday10 * 24 + st.hour;
    append_row(spec, ctx, cf, spec.renewables ? wind[k] : 0.0, spec.renewables ? solar[k] : 0.0,
               price.value(rows[k]), set.samples);
    set.stamps.push_back(st);
  }
  return set;
}

}  // namespace epf::models
