#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epf/backtest/metrics.hpp"
#include "epf/data/series.hpp"
#include "epf/models/model.hpp"

namespace epf::backtest {

struct DayRecord {
  Date date;
  std::array<double, 24> predicted{};
  std::array<double, 24> realized{};  // NaN where the hour is absent
  double mae = 0.0;                   // over the available hours
  int hours = 24;

  bool incomplete() const { return hours < 24; }
};

struct SkipRecord {
  Date date;
  std::string reason;
};

struct BacktestReport {
  std::string model_id;
  std::uint64_t seed = 0;
  std::vector<DayRecord> days;  // ascending by date
  std::vector<SkipRecord> skipped;

  // Hour-weighted means of absolute errors.
  std::map<int, double> yearly_mae() const;
  double overall_mae() const;
  std::size_t hour_count() const;
  std::vector<double> daily_mae() const;
  // Hourly errors (predicted - realized) over available hours, in time order.
  std::vector<double> errors() const;
};

struct BacktestConfig {
  Date first_day;
  Date last_day;
  int window_years = 5;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0: OpenMP default
  std::optional<int> epochs;
  const calendar::HolidayCalendar* calendar = nullptr;
  // Called after each successful day with the fitted model; may run
  // concurrently from several threads.
  std::function<void(Date, const models::ForecastModel&)> on_fitted;
};

// Per-day seed: base xor a hash of the date.
std::uint64_t day_seed(std::uint64_t base, Date d);

using ModelFactory = std::function<std::unique_ptr<models::ForecastModel>(const models::ModelOptions&)>;

// Refits a fresh model every day d on observations up to d - 1 and scores
// its forecast of d. Days whose fit fails with a library error are recorded
// as skipped together with the reason.
BacktestReport rolling_backtest(const models::ModelSpec& spec, const data::Dataset& ds, const BacktestConfig& cfg);
BacktestReport rolling_backtest(const std::string& model_id, const ModelFactory& factory, const data::Dataset& ds,
                                const BacktestConfig& cfg);

// MAE by year plus overall, one row per report.
struct YearlyTable {
  std::vector<std::string> columns;  // years then "overall"
  std::vector<std::string> row_ids;
  std::vector<std::vector<std::optional<double>>> cells;

  std::string format() const;
};

YearlyTable yearly_table(const std::vector<BacktestReport>& reports);

// Per-day ledger: date,hours,mae,p00..p23,r00..r23. Skipped days are kept as
// "# skipped <date>: <reason>" comment lines.
void write_ledger(std::ostream& out, const BacktestReport& r, const std::vector<std::string>& comments = {});
void write_ledger_file(const std::string& path, const BacktestReport& r, const std::vector<std::string>& comments = {});
BacktestReport read_ledger(std::istream& in);
BacktestReport read_ledger_file(const std::string& path);

enum class ErrorGroup { Hour, Weekday10, Month, Year, DayType };

const char* to_string(ErrorGroup g);
ErrorGroup parse_error_group(const std::string& s);

struct GroupStats {
  std::string label;
  Quartiles stats;
};

// Distribution of signed hourly errors (predicted - realized) per category.
std::vector<GroupStats> group_error_stats(const BacktestReport& r, ErrorGroup by,
                                          const calendar::HolidayCalendar& cal = calendar::HolidayCalendar::german());

// Long-term profile evaluation: for every year Y the model is fitted on all
// data before Jan 1 of Y, then its calendar-only forecast of Y is compared
// with the realized prices through hDev and dDev.
struct LtfYearScore {
  int year = 0;
  double hdev_mae = 0.0;
  double ddev_mae = 0.0;
  std::size_t days = 0;
};

struct LtfEvalResult {
  std::string model_id;
  std::vector<LtfYearScore> years;
  double mean_hdev_mae() const;
  double mean_ddev_mae() const;
};

LtfEvalResult ltf_eval(const std::string& model_id, const ModelFactory& factory, const data::Dataset& ds,
                       const std::vector<int>& eval_years, std::uint64_t seed = 1);
LtfEvalResult ltf_eval(const models::ModelSpec& spec, const data::Dataset& ds, const std::vector<int>& eval_years,
                       const models::ModelOptions& opts = {});

// Calendar-only hourly forecast of [first, last] with 24 slots per day.
data::HourlySeries forecast_calendar(const models::ForecastModel& m, Date first, Date last);

}  // namespace epf::backtest
