#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "epf/backtest/backtest.hpp"
#include "epf/backtest/metrics.hpp"
#include "epf/calendar/holidays.hpp"
#include "epf/core/date.hpp"
#include "epf/core/error.hpp"
#include "epf/data/csv.hpp"
#include "epf/data/quotes.hpp"
#include "epf/data/synth.hpp"
#include "epf/hpfc/hpfc.hpp"
#include "epf/insight/insight.hpp"
#include "epf/models/dnn.hpp"
#include "epf/nnkit/train.hpp"
#include "epf/report/svg.hpp"
#include "epf/stats/stats.hpp"
#include "epf/version.hpp"

namespace fs = std::filesystem;

namespace epf::cli {

using data::format_double;

std::string RunConfig::hash() const {
  KeyValues all = kv;
  all["command"] = command;
  return config_hash(all);
}

std::string RunConfig::header() const {
  std::string s = std::string("epf ") + kVersion + " " + command;
  s += " seed=" + (seed ? std::to_string(*seed) : std::string("none"));
  s += " config=" + hash();
  return s;
}

std::optional<std::string> RunConfig::get(const std::string& key) const {
  auto it = kv.find(key);
  if (it == kv.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::string RunConfig::require(const std::string& key) const {
  auto v = get(key);
  if (!v) {
    std::string flag = key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    throw UsageError(command + " needs --" + flag + " (or `" + key + "` in the config file)");
  }
  return *v;
}

std::uint64_t RunConfig::require_seed() const {
  if (!seed) throw UsageError(command + " trains or samples at random and needs --seed (or `seed` in the config file)");
  return *seed;
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    auto t = std::string(data::trim(cur));
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

Date date_key(const RunConfig& rc, const std::string& key) {
  const auto text = rc.require(key);
  try {
    return Date::parse(text);
  } catch (const Error& e) {
    throw UsageError("bad date for " + key + ": '" + text + "'");
  }
}

std::optional<Date> opt_date_key(const RunConfig& rc, const std::string& key) {
  if (!rc.get(key)) return std::nullopt;
  return date_key(rc, key);
}

int int_key(const RunConfig& rc, const std::string& key, int fallback) {
  auto v = rc.get(key);
  if (!v) return fallback;
  try {
    std::size_t pos = 0;
    const int x = std::stoi(*v, &pos);
    if (pos != v->size()) throw std::invalid_argument(key);
    return x;
  } catch (const std::exception&) {
    throw UsageError("bad integer for " + key + ": '" + *v + "'");
  }
}

void check_order(Date from, Date to) {
  if (to < from) throw UsageError("--to (" + to.to_string() + ") is before --from (" + from.to_string() + ")");
}

// Holds the optional calendar loaded from --holidays.
struct CalendarHolder {
  std::unique_ptr<calendar::HolidayCalendar> owned;
  const calendar::HolidayCalendar* get() const { return owned.get(); }
};

CalendarHolder load_calendar(const RunConfig& rc) {
  CalendarHolder h;
  if (auto p = rc.get("holidays"))
    h.owned = std::make_unique<calendar::HolidayCalendar>(calendar::HolidayCalendar::from_csv_file(*p));
  return h;
}

data::Dataset load_dataset(const RunConfig& rc) {
  const auto prices = rc.require("prices");
  auto price = data::load_hourly_csv_file(prices, {"price_eur_mwh"});
  data::Dataset ds;
  if (auto ren = rc.get("renewables")) {
    auto r = data::load_hourly_csv_file(*ren, {"wind_mw", "solar_mw"});
    data::AlignReport rep;
    ds = data::align(price[0], r[0], r[1], &rep);
    if (rep.dropped_price + rep.dropped_wind > 0)
      std::cerr << "epf: data: aligned on common stamps, dropped " << rep.dropped_price << " price and "
                << rep.dropped_wind << " renewable hours\n";
  } else {
    ds.price = std::move(price[0]);
  }
  if (ds.price.empty()) throw CoverageError("data", "no price observations in " + prices);
  return ds;
}

fs::path out_file(const RunConfig& rc, const std::string& name) {
  fs::create_directories(rc.out_dir);
  return fs::path(rc.out_dir) / name;
}

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

void write_svg(const RunConfig& rc, const std::string& name, const std::string& svg) {
  report::write_text_file(out_file(rc, name).string(), "<!-- " + rc.header() + " -->\n" + svg);
}

// Characters allowed in output file names derived from model ids.
std::string file_safe(std::string s) {
  for (char& c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.')) c = '_';
  return s;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  return format_double(v);
}

bool is_dnn(const models::ModelSpec& s) { return s.kind == models::ModelKind::Dnn; }

void write_backtest_diagnostics(const RunConfig& rc, const backtest::BacktestReport& r,
                                const calendar::HolidayCalendar& cal) {
  const auto id = file_safe(r.model_id);
  const auto errors = r.errors();
  if (errors.size() >= 3) {
    std::vector<double> abs_err(errors.size());
    std::transform(errors.begin(), errors.end(), abs_err.begin(), [](double e) { return std::abs(e); });
    const int max_lag = static_cast<int>(std::min<std::size_t>(168, abs_err.size() - 1));
    const auto a = backtest::acf(abs_err, max_lag);
    const auto p = backtest::pacf_from_acf(a);
    auto out = open_out(out_file(rc, "acf_" + id + ".csv"));
    out << "# " << rc.header() << "\n# absolute hourly errors of " << r.model_id << ", " << abs_err.size()
        << " observations\nlag,acf,pacf\n";
    for (int l = 0; l < max_lag; ++l) out << l + 1 << ',' << format_double(a[l]) << ',' << format_double(p[l]) << '\n';
    write_svg(rc, "pacf_" + id + ".svg",
              report::svg_stems("PACF of absolute errors, " + r.model_id, p, abs_err.size()));
  }
  if (!errors.empty()) {
    auto out = open_out(out_file(rc, "errors_" + id + ".csv"));
    out << "# " << rc.header() << "\n# signed hourly errors (predicted - realized) of " << r.model_id
        << "\ngroup,label,n,min,q1,median,mean,q3,max\n";
    for (auto g : {backtest::ErrorGroup::Hour, backtest::ErrorGroup::Weekday10, backtest::ErrorGroup::Month,
                   backtest::ErrorGroup::Year}) {
      const auto groups = backtest::group_error_stats(r, g, cal);
      for (const auto& gs : groups) {
        const auto& q = gs.stats;
        out << backtest::to_string(g) << ',' << gs.label << ',' << q.n << ',' << format_double(q.min) << ','
            << format_double(q.q1) << ',' << format_double(q.median) << ',' << format_double(q.mean) << ','
            << format_double(q.q3) << ',' << format_double(q.max) << '\n';
      }
      if (g != backtest::ErrorGroup::Year)
        write_svg(rc, "boxplot_" + std::string(backtest::to_string(g)) + "_" + id + ".svg",
                  report::svg_boxplot(r.model_id + " errors by " + backtest::to_string(g), groups));
    }
  }
  if (!r.days.empty()) {
    const std::size_t n = std::min<std::size_t>(7, r.days.size());
    report::Line pred{"forecast", {}}, real{"realized", {}};
    for (std::size_t i = r.days.size() - n; i < r.days.size(); ++i) {
      pred.values.insert(pred.values.end(), r.days[i].predicted.begin(), r.days[i].predicted.end());
      real.values.insert(real.values.end(), r.days[i].realized.begin(), r.days[i].realized.end());
    }
    write_svg(rc, "overlay_" + id + ".svg",
              report::svg_lines(r.model_id + ", last " + std::to_string(n) + " days", {real, pred}, "hour"));
  }
}

}  // namespace

int cmd_backtest(const RunConfig& rc) {
  const auto ids = split_list(rc.require("models"));
  if (ids.empty()) throw UsageError("--models is empty");
  const Date from = date_key(rc, "from"), to = date_key(rc, "to");
  check_order(from, to);
  std::vector<models::ModelSpec> specs;
  for (const auto& id : ids) specs.push_back(models::parse_model_id(id));
  if (std::any_of(specs.begin(), specs.end(), is_dnn)) rc.require_seed();
  const int window_years = int_key(rc, "window_years", 5);
  if (window_years < 1) throw UsageError("--window-years must be at least 1");
  std::optional<int> epochs;
  if (rc.get("epochs")) epochs = int_key(rc, "epochs", 0);
  const bool save_models = kv_bool(rc.kv, "save_models", false);

  const auto ds = load_dataset(rc);
  const auto cal = load_calendar(rc);
  std::vector<backtest::BacktestReport> reports;
  for (const auto& spec : specs) {
    backtest::BacktestConfig cfg;
    cfg.first_day = from;
    cfg.last_day = to;
    cfg.window_years = window_years;
    cfg.seed = rc.seed.value_or(1);
    cfg.jobs = rc.jobs;
    cfg.epochs = epochs;
    cfg.calendar = cal.get();
    std::optional<nlohmann::json> saved;
    if (save_models && is_dnn(spec)) {
      cfg.on_fitted = [&](Date d, const models::ForecastModel& m) {
        if (d == to) saved = dynamic_cast<const models::DnnModel&>(m).to_json();
      };
    }
    std::cerr << "epf: backtest " << spec.id() << " " << from.to_string() << ".." << to.to_string() << '\n';
    auto r = backtest::rolling_backtest(spec, ds, cfg);
    const auto id = file_safe(r.model_id);
    backtest::write_ledger_file(out_file(rc, "ledger_" + id + ".csv").string(), r, {rc.header()});
    write_backtest_diagnostics(rc, r, cal.get() ? *cal.get() : calendar::HolidayCalendar::german());
    if (save_models && is_dnn(spec)) {
      if (saved) {
        fs::create_directories(fs::path(rc.out_dir) / "models");
        auto out = open_out(fs::path(rc.out_dir) / "models" / (id + ".json"));
        (*saved)["generator"] = rc.header();
        out << saved->dump(1) << '\n';
      } else {
        std::cerr << "epf: backtest: " << spec.id() << " has no fitted model for " << to.to_string()
                  << " (day skipped), nothing saved\n";
      }
    }
    if (!r.skipped.empty()) std::cerr << "epf: backtest: " << r.skipped.size() << " day(s) skipped, see ledger\n";
    reports.push_back(std::move(r));
  }
  const auto table = backtest::yearly_table(reports);
  const auto text = table.format();
  {
    auto out = open_out(out_file(rc, "yearly_mae.txt"));
    out << "# " << rc.header() << '\n' << text;
  }
  {
    auto out = open_out(out_file(rc, "yearly_mae.csv"));
    out << "# " << rc.header() << "\nmodel";
    for (const auto& c : table.columns) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < table.row_ids.size(); ++i) {
      out << table.row_ids[i];
      for (const auto& cell : table.cells[i]) out << ',' << (cell ? format_double(*cell) : "");
      out << '\n';
    }
  }
  std::cout << text;
  return 0;
}

namespace {

std::vector<int> parse_years(const std::string& s) {
  std::vector<int> years;
  for (const auto& part : split_list(s)) {
    const auto dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        years.push_back(std::stoi(part));
      } else {
        const int a = std::stoi(part.substr(0, dash)), b = std::stoi(part.substr(dash + 1));
        if (b < a) throw UsageError("year range '" + part + "' is reversed");
        for (int y = a; y <= b; ++y) years.push_back(y);
      }
    } catch (const std::logic_error&) {
      throw UsageError("bad year list '" + s + "'");
    }
  }
  std::sort(years.begin(), years.end());
  years.erase(std::unique(years.begin(), years.end()), years.end());
  return years;
}

}  // namespace

int cmd_ltf(const RunConfig& rc) {
  const auto ids = split_list(rc.get("models").value_or("ltf-dummy,ltf-sin"));
  if (ids.empty()) throw UsageError("--models is empty");
  std::vector<models::ModelSpec> specs;
  for (const auto& id : ids) specs.push_back(models::parse_model_id(id));
  if (std::any_of(specs.begin(), specs.end(), is_dnn)) rc.require_seed();
  const auto ds = load_dataset(rc);
  const auto cal = load_calendar(rc);

  std::vector<int> years;
  if (auto y = rc.get("years")) {
    years = parse_years(*y);
  } else {
    const int last = ds.last_date() == Date(ds.last_date().year(), 12, 31) ? ds.last_date().year()
                                                                           : ds.last_date().year() - 1;
    for (int y = ds.first_date().year() + 1; y <= last; ++y) years.push_back(y);
  }
  if (years.empty()) throw UsageError("no evaluation years: the data cover less than two calendar years");

  models::ModelOptions opts;
  opts.seed = rc.seed.value_or(1);
  opts.calendar = cal.get();
  if (rc.get("epochs")) opts.epochs = int_key(rc, "epochs", 0);

  std::vector<backtest::LtfEvalResult> results;
  for (const auto& spec : specs) results.push_back(backtest::ltf_eval(spec, ds, years, opts));

  auto csv = open_out(out_file(rc, "ltf_scores.csv"));
  csv << "# " << rc.header() << "\nmodel,year,days,hdev_mae,ddev_mae\n";
  std::ostringstream table;
  table << std::left << std::setw(18) << "model";
  for (int y : years) table << std::right << std::setw(14) << y;
  table << std::setw(14) << "mean" << '\n';
  std::vector<report::Line> lines;
  for (const auto& r : results) {
    for (const auto& s : r.years)
      csv << r.model_id << ',' << s.year << ',' << s.days << ',' << format_double(s.hdev_mae) << ','
          << format_double(s.ddev_mae) << '\n';
    csv << r.model_id << ",mean,," << format_double(r.mean_hdev_mae()) << ',' << format_double(r.mean_ddev_mae())
        << '\n';
    table << std::left << std::setw(18) << r.model_id << std::right << std::fixed << std::setprecision(2);
    report::Line line{r.model_id, {}};
    for (const auto& s : r.years) {
      std::ostringstream cell;
      cell << std::fixed << std::setprecision(2) << s.hdev_mae << "/" << s.ddev_mae;
      table << std::setw(14) << cell.str();
      line.values.push_back(s.hdev_mae);
    }
    std::ostringstream mean;
    mean << std::fixed << std::setprecision(2) << r.mean_hdev_mae() << "/" << r.mean_ddev_mae();
    table << std::setw(14) << mean.str() << '\n';
    lines.push_back(std::move(line));
  }
  auto txt = open_out(out_file(rc, "ltf_table.txt"));
  txt << "# " << rc.header() << "\n# cells: hDev MAE / dDev MAE\n" << table.str();
  write_svg(rc, "ltf_hdev.svg", report::svg_lines("hDev MAE per evaluation year", lines, "year index"));
  std::cout << "hDev MAE / dDev MAE\n" << table.str();
  return 0;
}

int cmd_hpfc(const RunConfig& rc) {
  const auto spec = models::parse_model_id(rc.get("model").value_or("ltf-sin"));
  if (is_dnn(spec)) rc.require_seed();
  const auto quotes_path = rc.require("quotes");
  const auto quotes = data::load_quotes_csv_file(quotes_path);
  if (quotes.empty()) throw UsageError("no quotes in " + quotes_path);
  Date from = quotes.front().delivery_start, to = quotes.front().delivery_end;
  for (const auto& q : quotes) {
    from = std::min(from, q.delivery_start);
    to = std::max(to, q.delivery_end);
  }
  if (auto f = opt_date_key(rc, "from")) from = *f;
  if (auto t = opt_date_key(rc, "to")) to = *t;
  check_order(from, to);

  const auto ds = load_dataset(rc);
  const auto cal = load_calendar(rc);
  models::ModelOptions opts;
  opts.seed = rc.seed.value_or(1);
  opts.calendar = cal.get();
  opts.window_years = int_key(rc, "window_years", opts.window_years);
  if (rc.get("epochs")) opts.epochs = int_key(rc, "epochs", 0);
  const Date as_of = std::min(ds.last_date(), from - 1);
  auto model = models::make_model(spec, opts);
  model->fit(ds, as_of);

  const auto profile = hpfc::build_profile(*model, from, to);
  const auto set_id = fs::path(quotes_path).stem().string();
  const auto curve = hpfc::shift_to_quotes(profile, quotes, set_id);
  const auto check = hpfc::verify_no_arbitrage(curve.series, quotes);

  const std::vector<std::string> comments{rc.header(), "model " + model->id() + " fitted through " + as_of.to_string(),
                                          "quotes " + set_id};
  {
    auto out = open_out(out_file(rc, "profile.csv"));
    data::write_csv(out, {"price_eur_mwh"}, {&profile.series}, comments);
  }
  {
    auto out = open_out(out_file(rc, "hpfc.csv"));
    data::write_csv(out, {"price_eur_mwh"}, {&curve.series}, comments);
  }
  {
    auto out = open_out(out_file(rc, "arbitrage.csv"));
    out << "# " << rc.header() << "\ndelivery_start,delivery_end,load_shape,price_eur_mwh,period_mean,residual\n";
    for (const auto& row : check.rows)
      out << row.quote.delivery_start.to_string() << ',' << row.quote.delivery_end.to_string() << ','
          << data::to_string(row.quote.shape) << ',' << format_double(row.quote.price) << ','
          << format_double(row.period_mean) << ',' << format_double(row.residual) << '\n';
  }
  // Daily means keep the chart readable over long horizons.
  report::Line p{"profile", {}}, c{"forward curve", {}};
  for (Date d = from; d <= to; ++d) {
    const auto a = profile.series.day(d), b = curve.series.day(d);
    double sa = 0, sb = 0;
    int n = 0;
    for (int h = 0; h < 24; ++h) {
      if (std::isnan(a[h])) continue;
      sa += a[h];
      sb += b[h];
      ++n;
    }
    p.values.push_back(n ? sa / n : std::nan(""));
    c.values.push_back(n ? sb / n : std::nan(""));
  }
  write_svg(rc, "hpfc.svg", report::svg_lines("Daily means, " + set_id, {p, c}, "day"));
  std::cout << "max |residual| " << format_double(check.max_abs_residual()) << " over " << check.rows.size()
            << " quotes\n";
  if (!check.pass()) {
    std::cerr << "epf: hpfc: curve misses its quotes by more than 1e-9\n";
    return 1;
  }
  return 0;
}

int cmd_stats(const RunConfig& rc) {
  if (rc.inputs.size() < 2) throw UsageError("stats needs at least two ledger files");
  std::vector<backtest::BacktestReport> reports;
  std::set<std::string> seen;
  for (const auto& p : rc.inputs) {
    reports.push_back(backtest::read_ledger_file(p));
    if (!seen.insert(reports.back().model_id).second)
      throw UsageError("model " + reports.back().model_id + " appears in more than one ledger");
  }
  // Days forecast by every method.
  std::map<Date, std::vector<double>> by_day;
  for (std::size_t k = 0; k < reports.size(); ++k)
    for (const auto& d : reports[k].days) {
      auto& row = by_day[d.date];
      if (row.size() == k) row.push_back(d.mae);
    }
  stats::ScoreMatrix m;
  for (const auto& r : reports) m.methods.push_back(r.model_id);
  for (auto& [d, row] : by_day)
    if (row.size() == reports.size()) m.rows.push_back(std::move(row));

  std::optional<std::string> control;
  if (auto c = rc.get("control")) control = *c;
  const auto rank = stats::holm_vs_control(m, control);
  const auto pm = stats::pairwise_matrix(m);

  {
    auto out = open_out(out_file(rc, "ranking.csv"));
    out << "# " << rc.header() << "\n# days " << m.n() << ", aligned-rank statistic "
        << format_double(rank.statistic) << ", p-value " << format_double(rank.p_value) << ", control "
        << rank.control << "\nrank,method,avg_rank,raw_p,holm_p\n";
    for (std::size_t i = 0; i < rank.methods.size(); ++i)
      out << i + 1 << ',' << rank.methods[i] << ',' << format_double(rank.avg_rank[i]) << ','
          << fmt(rank.raw_p[i]) << ',' << fmt(rank.adjusted_p[i]) << '\n';
  }
  {
    auto out = open_out(out_file(rc, "pairwise.csv"));
    out << "# " << rc.header() << "\n# Holm-adjusted p-values over all pairs\nmethod";
    for (const auto& o : pm.order) out << ',' << o;
    out << '\n';
    for (std::size_t i = 0; i < pm.order.size(); ++i) {
      out << pm.order[i];
      for (double p : pm.p[i]) out << ',' << format_double(p);
      out << '\n';
    }
  }
  write_svg(rc, "pairwise.svg", report::svg_heatmap("Holm-adjusted pairwise p-values", pm));

  std::cout << "days " << m.n() << ", statistic " << format_double(rank.statistic) << ", p-value "
            << format_double(rank.p_value) << "\n";
  for (std::size_t i = 0; i < rank.methods.size(); ++i) {
    std::cout << std::left << std::setw(24) << rank.methods[i] << " avg rank " << std::fixed << std::setprecision(2)
              << rank.avg_rank[i];
    if (!std::isnan(rank.adjusted_p[i])) std::cout << "  holm p " << std::setprecision(4) << rank.adjusted_p[i];
    std::cout << '\n';
  }
  return 0;
}

int cmd_embeddings(const RunConfig& rc) {
  const auto path = rc.require("model");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read model file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("models", path + ": " + e.what());
  }
  const auto model = models::DnnModel::from_json(j);
  const auto names = insight::embedding_table_names(model);
  if (names.empty()) (void)insight::embedding_table(model, 0);  // throws the no-embeddings error
  const int k = int_key(rc, "neighbors", 3);
  if (k < 1) throw UsageError("--neighbors must be at least 1");

  for (std::size_t t = 0; t < names.size(); ++t) {
    const auto lv = insight::embedding_table(model, t);
    const auto base = "emb_" + file_safe(names[t]);
    {
      auto out = open_out(out_file(rc, base + "_vectors.tsv"));
      out << "# " << rc.header() << '\n';
      insight::write_vectors_tsv(out, lv);
    }
    {
      auto out = open_out(out_file(rc, base + "_metadata.tsv"));
      out << "# " << rc.header() << '\n';
      insight::write_metadata_tsv(out, lv, names[t]);
    }
    {
      auto out = open_out(out_file(rc, base + "_neighbors.csv"));
      out << "# " << rc.header() << "\nlabel,rank,neighbor,cosine_distance\n";
      const auto kk = std::min<std::size_t>(k, lv.size() - 1);
      for (const auto& label : lv.labels) {
        const auto nn = insight::nearest_neighbors(lv, label, kk);
        for (std::size_t i = 0; i < nn.size(); ++i)
          out << label << ',' << i + 1 << ',' << nn[i].first << ',' << format_double(nn[i].second) << '\n';
      }
    }
    const auto proj = insight::pca2(lv);
    write_svg(rc, base + "_pca.svg", report::svg_scatter(names[t] + " embedding, first two principal axes",
                                                         lv.labels, proj.coords));
    std::cout << names[t] << ": " << lv.size() << " x " << lv.dim() << (proj.rank_deficient ? " (rank 1)" : "")
              << '\n';
  }
  return 0;
}

int cmd_synth(const RunConfig& rc) {
  const auto seed = rc.require_seed();
  const Date from = date_key(rc, "from"), to = date_key(rc, "to");
  check_order(from, to);
  auto cfg = data::synth_config_from(rc.kv);
  cfg.seed = seed;
  const auto ds = data::synth_generate(seed, from, to, cfg);
  const std::vector<std::string> comments{rc.header()};
  {
    auto out = open_out(out_file(rc, "prices.csv"));
    data::write_csv(out, {"price_eur_mwh"}, {&ds.price}, comments);
  }
  {
    auto out = open_out(out_file(rc, "renewables.csv"));
    data::write_csv(out, {"wind_mw", "solar_mw"}, {&*ds.wind, &*ds.solar}, comments);
  }
  {
    auto out = open_out(out_file(rc, "synth.cfg"));
    out << "# " << rc.header() << "\nfrom = " << from.to_string() << "\nto = " << to.to_string() << '\n';
    for (const auto& [key, v] : data::to_key_values(cfg)) out << key << " = " << v << '\n';
  }
  std::cout << ds.price.size() << " hours " << from.to_string() << ".." << to.to_string() << '\n';
  return 0;
}

int cmd_gradcheck(const RunConfig& rc) {
  const int count = int_key(rc, "count", 50);
  if (count < 1) throw UsageError("--count must be at least 1");
  const auto r = nn::random_grad_checks(static_cast<std::size_t>(count), rc.seed.value_or(1));
  std::cout << r.networks << " networks, " << r.parameters << " parameters, max relative error "
            << format_double(r.max_rel_error) << " (network " << r.worst << ")\n";
  return r.max_rel_error < 1e-4 ? 0 : 1;
}

}  // namespace epf::cli
