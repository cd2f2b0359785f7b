#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "epf/calendar/holidays.hpp"
#include "epf/core/date.hpp"
#include "epf/data/series.hpp"

namespace epf::models {

using DayPrices = std::array<double, 24>;

// Day-ahead renewable forecasts for the 24 hours of the target day.
struct DayExogenous {
  std::array<double, 24> wind{};
  std::array<double, 24> solar{};
};

// Exogenous inputs for day d taken from a dataset; nullopt when the dataset
// has no renewables. Missing hours repeat the previous available hour.
std::optional<DayExogenous> exogenous_for(const data::Dataset& ds, Date d);

struct ModelOptions {
  std::uint64_t seed = 1;
  int window_years = 5;                  // trailing window for the short-term models
  std::optional<int> epochs;             // overrides the network preset
  const calendar::HolidayCalendar* calendar = nullptr;  // German table when null

  const calendar::HolidayCalendar& cal() const {
    return calendar ? *calendar : calendar::HolidayCalendar::german();
  }
};

// First date of a trailing window of `years` calendar years ending at as_of
// (inclusive): the same date `years` earlier, plus one day.
Date window_start(Date as_of, int years);

// Common fit/predict interface. fit() may only read observations dated on
// or before as_of.
class ForecastModel {
 public:
  virtual ~ForecastModel() = default;

  virtual std::string id() const = 0;
  virtual void fit(const data::Dataset& history, Date as_of) = 0;
  virtual DayPrices predict_day(Date d, const std::optional<DayExogenous>& exo = std::nullopt) const = 0;
  virtual bool uses_renewables() const { return false; }
  // Calendar-only hourly evaluation used for long-term profiles.
  virtual double predict_hour(const HourlyStamp& t) const;
};

enum class ModelKind { Naive, Dnn, Lear, LtfDummy, LtfSinusoidal };
enum class Encoder { Embedding, Ordinal, Circle };

std::string to_string(Encoder e);

// Parsed model identifier, e.g. "dnn-emb-c3+renew" or "ltf-sin".
struct ModelSpec {
  ModelKind kind = ModelKind::Naive;
  Encoder encoder = Encoder::Embedding;
  int config = 0;        // DNN preset 1..5
  bool renewables = false;
  bool cross = false;    // month-hour and weekday-hour cross features
  bool year = false;     // year as a calendar feature

  std::string id() const;
};

ModelSpec parse_model_id(const std::string& id);
std::unique_ptr<ForecastModel> make_model(const ModelSpec& spec, const ModelOptions& opts = {});

}  // namespace epf::models
