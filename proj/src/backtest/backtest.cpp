#include "epf/backtest/backtest.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "epf/calendar/features.hpp"
#include "epf/core/error.hpp"
#include "epf/core/random.hpp"
#include "epf/data/csv.hpp"

namespace epf::backtest {

std::map<int, double> BacktestReport::yearly_mae() const {
  std::map<int, std::pair<double, std::size_t>> acc;
  for (const auto& d : days) {
    auto& a = acc[d.date.year()];
    a.first += d.mae * d.hours;
    a.second += static_cast<std::size_t>(d.hours);
  }
  std::map<int, double> out;
  for (const auto& [y, a] : acc) out[y] = a.first / static_cast<double>(a.second);
  return out;
}

double BacktestReport::overall_mae() const {
  double s = 0.0;
  std::size_t n = 0;
  for (const auto& d : days) {
    s += d.mae * d.hours;
    n += static_cast<std::size_t>(d.hours);
  }
  if (n == 0) throw UndefinedValueError("backtest", model_id + ": no scored days");
  return s / static_cast<double>(n);
}

std::size_t BacktestReport::hour_count() const {
  std::size_t n = 0;
  for (const auto& d : days) n += static_cast<std::size_t>(d.hours);
  return n;
}

std::vector<double> BacktestReport::daily_mae() const {
  std::vector<double> v;
  v.reserve(days.size());
  for (const auto& d : days) v.push_back(d.mae);
  return v;
}

std::vector<double> BacktestReport::errors() const {
  std::vector<double> e;
  e.reserve(days.size() * 24);
  for (const auto& d : days)
    for (int h = 0; h < 24; ++h)
      if (!std::isnan(d.realized[h])) e.push_back(d.predicted[h] - d.realized[h]);
  return e;
}

std::uint64_t day_seed(std::uint64_t base, Date d) {
  return base ^ splitmix64(static_cast<std::uint64_t>(d.serial()));
}

namespace {

DayRecord score_day(Date d, const models::DayPrices& pred, const std::array<double, 24>& real) {
  DayRecord r;
  r.date = d;
  r.predicted = pred;
  r.realized = real;
  double s = 0.0;
  int n = 0;
  for (int h = 0; h < 24; ++h) {
    if (std::isnan(real[h])) continue;
    s += std::abs(real[h] - pred[h]);
    ++n;
  }
  r.hours = n;
  r.mae = s / n;
  return r;
}

}  // namespace

BacktestReport rolling_backtest(const std::string& model_id, const ModelFactory& factory, const data::Dataset& ds,
                                const BacktestConfig& cfg) {
  if (cfg.last_day < cfg.first_day)
    throw InvalidArgumentError("backtest", "last day " + cfg.last_day.to_string() + " precedes first day " +
                                               cfg.first_day.to_string());
  const int n = cfg.last_day - cfg.first_day + 1;
  std::vector<std::optional<DayRecord>> done(n);
  std::vector<std::string> why(n);
  std::exception_ptr fatal;

  const int threads = cfg.jobs > 0 ? cfg.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (int i = 0; i < n; ++i) {
    const Date d = cfg.first_day + i;
    try {
      const auto real = ds.price.day(d);
      if (std::all_of(real.begin(), real.end(), [](double v) { return std::isnan(v); })) {
        why[i] = "no realized prices";
        continue;
      }
      if (ds.first_date() > d - 1) {
        why[i] = "no history before the day";
        continue;
      }
      models::ModelOptions opts;
      opts.seed = day_seed(cfg.seed, d);
      opts.window_years = cfg.window_years;
      opts.epochs = cfg.epochs;
      opts.calendar = cfg.calendar;
      auto model = factory(opts);
      const Date as_of = d - 1;
      const auto history = ds.slice(std::max(ds.first_date(), models::window_start(as_of, cfg.window_years + 1)), as_of);
      model->fit(history, as_of);
      const auto exo = model->uses_renewables() ? models::exogenous_for(ds, d) : std::nullopt;
      done[i] = score_day(d, model->predict_day(d, exo), real);
      if (cfg.on_fitted) cfg.on_fitted(d, *model);
    } catch (const Error& e) {
      why[i] = e.what();
    } catch (...) {
#pragma omp critical(epf_backtest_fatal)
      if (!fatal) fatal = std::current_exception();
    }
  }
  if (fatal) std::rethrow_exception(fatal);

  BacktestReport rep;
  rep.model_id = model_id;
  rep.seed = cfg.seed;
  for (int i = 0; i < n; ++i) {
    if (done[i]) rep.days.push_back(*done[i]);
    else rep.skipped.push_back({cfg.first_day + i, why[i]});
  }
  return rep;
}

BacktestReport rolling_backtest(const models::ModelSpec& spec, const data::Dataset& ds, const BacktestConfig& cfg) {
  return rolling_backtest(spec.id(), [&](const models::ModelOptions& o) { return models::make_model(spec, o); }, ds,
                          cfg);
}

std::string YearlyTable::format() const {
  std::size_t w0 = 6;
  for (const auto& id : row_ids) w0 = std::max(w0, id.size());
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(w0)) << "model";
  for (const auto& c : columns) os << "  " << std::right << std::setw(8) << c;
  os << '\n';
  for (std::size_t r = 0; r < row_ids.size(); ++r) {
    os << std::left << std::setw(static_cast<int>(w0)) << row_ids[r];
    for (const auto& v : cells[r]) {
      os << "  " << std::right << std::setw(8);
      if (v) os << std::fixed << std::setprecision(2) << *v;
      else os << "-";
    }
    os << '\n';
  }
  return os.str();
}

YearlyTable yearly_table(const std::vector<BacktestReport>& reports) {
  if (reports.empty()) throw InvalidArgumentError("backtest", "yearly table of no reports");
  std::set<int> years;
  for (const auto& r : reports)
    for (const auto& [y, v] : r.yearly_mae()) years.insert(y);
  YearlyTable t;
  for (int y : years) t.columns.push_back(std::to_string(y));
  t.columns.push_back("overall");
  for (const auto& r : reports) {
    t.row_ids.push_back(r.model_id);
    const auto ym = r.yearly_mae();
    std::vector<std::optional<double>> row;
    for (int y : years) {
      auto it = ym.find(y);
      row.push_back(it == ym.end() ? std::nullopt : std::optional<double>(it->second));
    }
    row.push_back(r.days.empty() ? std::nullopt : std::optional<double>(r.overall_mae()));
    t.cells.push_back(std::move(row));
  }
  return t;
}

void write_ledger(std::ostream& out, const BacktestReport& r, const std::vector<std::string>& comments) {
  for (const auto& c : comments) out << "# " << c << '\n';
  out << "# model " << r.model_id << '\n' << "# seed " << r.seed << '\n';
  for (const auto& s : r.skipped) out << "# skipped " << s.date.to_string() << ": " << s.reason << '\n';
  out << "date,hours,mae";
  char buf[8];
  for (int h = 0; h < 24; ++h) {
    std::snprintf(buf, sizeof buf, "p%02d", h);
    out << ',' << buf;
  }
  for (int h = 0; h < 24; ++h) {
    std::snprintf(buf, sizeof buf, "r%02d", h);
    out << ',' << buf;
  }
  out << '\n';
  for (const auto& d : r.days) {
    out << d.date.to_string() << ',' << d.hours << ',' << data::format_double(d.mae);
    for (double v : d.predicted) out << ',' << data::format_double(v);
    for (double v : d.realized) {
      out << ',';
      if (!std::isnan(v)) out << data::format_double(v);
    }
    out << '\n';
  }
}

void write_ledger_file(const std::string& path, const BacktestReport& r, const std::vector<std::string>& comments) {
  std::ofstream f(path);
  if (!f) throw InvalidArgumentError("backtest", "cannot write " + path);
  write_ledger(f, r, comments);
}

BacktestReport read_ledger(std::istream& in) {
  BacktestReport r;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string_view body = data::trim(std::string_view(line).substr(1));
      if (body.starts_with("model ")) r.model_id = std::string(body.substr(6));
      else if (body.starts_with("seed ")) r.seed = std::stoull(std::string(body.substr(5)));
      else if (body.starts_with("skipped ")) {
        const auto rest = body.substr(8);
        const auto colon = rest.find(':');
        r.skipped.push_back({Date::parse(rest.substr(0, colon)),
                             colon == std::string_view::npos ? "" : std::string(data::trim(rest.substr(colon + 1)))});
      }
      continue;
    }
    if (!header) {
      if (!line.starts_with("date,")) throw ParseError("backtest", "ledger line " + std::to_string(line_no) + ": bad header");
      header = true;
      continue;
    }
    const auto f = data::split_line(line, ',');
    if (f.size() != 51)
      throw ParseError("backtest", "ledger line " + std::to_string(line_no) + ": expected 51 fields, got " +
                                       std::to_string(f.size()));
    DayRecord d;
    d.date = Date::parse(f[0]);
    d.hours = static_cast<int>(data::parse_double(f[1], ',', line_no));
    d.mae = data::parse_double(f[2], ',', line_no);
    for (int h = 0; h < 24; ++h) {
      d.predicted[h] = data::parse_double(f[3 + h], ',', line_no);
      const auto cell = data::trim(f[27 + h]);
      d.realized[h] = cell.empty() ? std::nan("") : data::parse_double(cell, ',', line_no);
    }
    r.days.push_back(d);
  }
  if (!header) throw ParseError("backtest", "ledger without a header line");
  if (r.model_id.empty()) throw ParseError("backtest", "ledger without a model line");
  return r;
}

BacktestReport read_ledger_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgumentError("backtest", "cannot read " + path);
  return read_ledger(f);
}

const char* to_string(ErrorGroup g) {
  switch (g) {
    case ErrorGroup::Hour: return "hour";
    case ErrorGroup::Weekday10: return "weekday";
    case ErrorGroup::Month: return "month";
    case ErrorGroup::Year: return "year";
    case ErrorGroup::DayType: return "daytype";
  }
  return "?";
}

ErrorGroup parse_error_group(const std::string& s) {
  for (auto g : {ErrorGroup::Hour, ErrorGroup::Weekday10, ErrorGroup::Month, ErrorGroup::Year, ErrorGroup::DayType})
    if (s == to_string(g)) return g;
  throw ParseError("backtest", "unknown error grouping '" + s + "'");
}

std::vector<GroupStats> group_error_stats(const BacktestReport& r, ErrorGroup by, const calendar::HolidayCalendar& cal) {
  std::map<int, std::vector<double>> groups;
  for (const auto& d : r.days) {
    const auto cf = calendar::calendar_features({d.date, 0}, cal);
    for (int h = 0; h < 24; ++h) {
      if (std::isnan(d.realized[h])) continue;
      int key = 0;
      switch (by) {
        case ErrorGroup::Hour: key = h; break;
        case ErrorGroup::Weekday10: key = cf.weekday10; break;
        case ErrorGroup::Month: key = cf.month; break;
        case ErrorGroup::Year: key = cf.year; break;
        case ErrorGroup::DayType: key = cf.daytype5; break;
      }
      groups[key].push_back(d.predicted[h] - d.realized[h]);
    }
  }
  const auto weekday_labels = calendar::category_labels(calendar::EmbeddingVariable::Weekday10, calendar::kBaseYear, 1);
  const auto month_labels = calendar::category_labels(calendar::EmbeddingVariable::Month, calendar::kBaseYear, 1);
  std::vector<GroupStats> out;
  for (auto& [k, v] : groups) {
    std::string label;
    switch (by) {
      case ErrorGroup::Weekday10: label = weekday_labels[k]; break;
      case ErrorGroup::Month: label = month_labels[k - 1]; break;
      default: label = std::to_string(k); break;
    }
    out.push_back({label, summarize(std::move(v))});
  }
  return out;
}

data::HourlySeries forecast_calendar(const models::ForecastModel& m, Date first, Date last) {
  std::vector<HourlyStamp> st;
  std::vector<double> v;
  for (Date d = first; d <= last; ++d) {
    const auto p = m.predict_day(d);
    for (int h = 0; h < 24; ++h) {
      st.push_back({d, h});
      v.push_back(p[h]);
    }
  }
  return data::HourlySeries(std::move(st), std::move(v));
}

double LtfEvalResult::mean_hdev_mae() const {
  if (years.empty()) throw UndefinedValueError("backtest", "no evaluated years");
  double s = 0.0;
  for (const auto& y : years) s += y.hdev_mae;
  return s / static_cast<double>(years.size());
}

double LtfEvalResult::mean_ddev_mae() const {
  if (years.empty()) throw UndefinedValueError("backtest", "no evaluated years");
  double s = 0.0;
  for (const auto& y : years) s += y.ddev_mae;
  return s / static_cast<double>(years.size());
}

LtfEvalResult ltf_eval(const std::string& model_id, const ModelFactory& factory, const data::Dataset& ds,
                       const std::vector<int>& eval_years, std::uint64_t seed) {
  LtfEvalResult res;
  res.model_id = model_id;
  for (int y : eval_years) {
    const Date start(y, 1, 1), end(y, 12, 31);
    if (ds.first_date() >= start || ds.last_date() < end)
      throw CoverageError("backtest", "ltf evaluation of " + std::to_string(y) + " needs history before it and the whole year");
    models::ModelOptions opts;
    opts.seed = day_seed(seed, start);
    opts.window_years = y - ds.first_date().year() + 1;
    auto model = factory(opts);
    model->fit(ds.slice(ds.first_date(), start - 1), start - 1);
    // Both sides use the days on which the realized prices are complete.
    const auto rl = deviations(ds.price, start, end);
    const auto full = forecast_calendar(*model, start, end);
    std::vector<HourlyStamp> st;
    std::vector<double> v;
    for (Date d : rl.days) {
      const auto p = full.day(d);
      for (int h = 0; h < 24; ++h) {
        st.push_back({d, h});
        v.push_back(p[h]);
      }
    }
    const auto fc = deviations(data::HourlySeries(std::move(st), std::move(v)), start, end);
    std::map<Date, std::size_t> fidx;
    for (std::size_t i = 0; i < fc.days.size(); ++i) fidx[fc.days[i]] = i;
    double sh = 0.0, sd = 0.0;
    std::size_t nd = 0;
    for (std::size_t i = 0; i < rl.days.size(); ++i) {
      const auto it = fidx.find(rl.days[i]);
      if (it == fidx.end()) continue;
      for (int h = 0; h < 24; ++h) sh += std::abs(fc.hdev[it->second][h] - rl.hdev[i][h]);
      sd += std::abs(fc.ddev[it->second] - rl.ddev[i]);
      ++nd;
    }
    if (nd == 0) throw CoverageError("backtest", "no complete days in " + std::to_string(y));
    res.years.push_back({y, sh / (24.0 * nd), sd / nd, nd});
  }
  return res;
}

LtfEvalResult ltf_eval(const models::ModelSpec& spec, const data::Dataset& ds, const std::vector<int>& eval_years,
                       const models::ModelOptions& opts) {
  return ltf_eval(
      spec.id(),
      [&](const models::ModelOptions& o) {
        auto merged = opts;
        merged.seed = o.seed;
        merged.window_years = o.window_years;
        return models::make_model(spec, merged);
      },
      ds, eval_years, opts.seed);
}

}  // namespace epf::backtest
