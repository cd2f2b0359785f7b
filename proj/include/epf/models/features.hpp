#pragma once

#include <optional>
#include <vector>

#include "epf/calendar/features.hpp"
#include "epf/data/scaler.hpp"
#include "epf/data/series.hpp"
#include "epf/models/model.hpp"
#include "epf/nnkit/network.hpp"

namespace epf::models {

struct FeatureSpec {
  Encoder encoder = Encoder::Embedding;
  bool renewables = false;
  bool year = false;
  bool cross = false;

  // Embedding tables, in input order; empty for the ordinal and circle encoders.
  std::vector<calendar::EmbeddingVariable> embedding_variables() const;
  // Width of the continuous input block: scaled wind and solar first, then
  // the ordinal or circle calendar columns.
  int n_continuous() const;
};

// State fixed at training time and reused for prediction.
struct FeatureContext {
  int first_year = calendar::kBaseYear;  // year-embedding row 0
  int n_years = 1;
  std::optional<data::ScalerParams> wind;
  std::optional<data::ScalerParams> solar;
};

struct SampleSet {
  nn::Samples samples;
  std::vector<HourlyStamp> stamps;
  FeatureContext context;
};

// One sample per hour of history with a price (and renewables when
// requested). Scalers are fit on this history only; targets are raw prices.
// Throws FeatureError when renewables are requested but absent.
SampleSet build_samples(const data::Dataset& history, const FeatureSpec& spec,
                        const calendar::HolidayCalendar& cal = calendar::HolidayCalendar::german());

// Appends one feature row. Years outside the trained range map to the
// nearest trained year for the year embedding.
void append_row(const FeatureSpec& spec, const FeatureContext& ctx, const calendar::CalendarFeatures& cf, double wind,
                double solar, double target, nn::Samples& out);

nn::Samples empty_samples(const FeatureSpec& spec);

}  // namespace epf::models
