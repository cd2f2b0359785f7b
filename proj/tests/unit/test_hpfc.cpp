#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "../support/builders.hpp"
#include "epf/backtest/metrics.hpp"
#include "epf/core/error.hpp"
#include "epf/data/synth.hpp"
#include "epf/hpfc/hpfc.hpp"
#include "epf/models/dnn.hpp"
#include "epf/models/ltf.hpp"

using namespace epf;
using namespace epf::hpfc;
using data::FuturesQuote;
using data::LoadShape;

namespace {

HourlyProfile profile_of(Date first, Date last, const std::function<double(const HourlyStamp&)>& f) {
  return {epf::testing::make_series(first, last, f), "test"};
}

double wavy(const HourlyStamp& t) {
  return 40.0 + 10.0 * std::sin(t.hour / 3.0) + 3.0 * std::cos(t.date.day_of_year() / 20.0) +
         (t.date.weekday() >= 5 ? -6.0 : 0.0);
}

double period_mean(const data::HourlySeries& s, Date a, Date b) {
  double sum = 0;
  int n = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.stamp(i).date >= a && s.stamp(i).date <= b) {
      sum += s.value(i);
      ++n;
    }
  return sum / n;
}

std::vector<std::filesystem::path> corpus() {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(std::filesystem::path(EPF_TEST_DATA_DIR) / "quotes"))
    files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

TEST(Shift, SingleBaseQuote) {
  auto p = profile_of(Date(2020, 5, 5), Date(2020, 5, 5), [](const HourlyStamp& t) { return t.hour % 2 ? 60.0 : 40.0; });
  const auto c = shift_to_quotes(p, {{Date(2020, 5, 5), Date(2020, 5, 5), 55.0, LoadShape::Base}});
  for (std::size_t i = 0; i < c.series.size(); ++i) EXPECT_EQ(c.series.value(i), i % 2 ? 65.0 : 45.0);
  const auto same = shift_to_quotes(p, {{Date(2020, 5, 5), Date(2020, 5, 5), 50.0, LoadShape::Base}});
  EXPECT_EQ(same.series, p.series);
}

TEST(Shift, MonthThenYear) {
  auto p = profile_of(Date(2021, 1, 1), Date(2021, 2, 28), wavy);
  const std::vector<FuturesQuote> q{{Date(2021, 1, 1), Date(2021, 2, 28), 60.0, LoadShape::Base},
                                    {Date(2021, 1, 1), Date(2021, 1, 31), 50.0, LoadShape::Base}};
  const auto c = shift_to_quotes(p, q);
  EXPECT_NEAR(period_mean(c.series, Date(2021, 1, 1), Date(2021, 1, 31)), 50.0, 1e-9);
  EXPECT_NEAR(period_mean(c.series, Date(2021, 1, 1), Date(2021, 2, 28)), 60.0, 1e-9);
  // Two-equation hand solve for February.
  EXPECT_NEAR(period_mean(c.series, Date(2021, 2, 1), Date(2021, 2, 28)), (60.0 * 59 - 50.0 * 31) / 28, 1e-9);
  EXPECT_TRUE(verify_no_arbitrage(c.series, q).pass());
}

TEST(Shift, FullyCoveredInconsistentYearConflicts) {
  auto p = profile_of(Date(2021, 1, 1), Date(2021, 2, 28), wavy);
  std::vector<FuturesQuote> q{{Date(2021, 1, 1), Date(2021, 1, 31), 50.0, LoadShape::Base},
                              {Date(2021, 2, 1), Date(2021, 2, 28), 40.0, LoadShape::Base},
                              {Date(2021, 1, 1), Date(2021, 2, 28), 60.0, LoadShape::Base}};
  try {
    shift_to_quotes(p, q);
    FAIL() << "no conflict raised";
  } catch (const ArbitrageConflictError& e) {
    EXPECT_NE(std::string(e.what()).find("residual"), std::string::npos);
  }
  // A consistent year quote is accepted.
  q[2].price = (50.0 * 31 + 40.0 * 28) / 59;
  EXPECT_TRUE(verify_no_arbitrage(shift_to_quotes(p, q).series, q).pass());
}

TEST(Shift, InvalidQuoteSets) {
  auto p = profile_of(Date(2021, 1, 1), Date(2021, 3, 31), wavy);
  EXPECT_THROW(shift_to_quotes(p, {{Date(2021, 3, 1), Date(2021, 4, 30), 1.0, LoadShape::Base}}), CoverageError);
  EXPECT_THROW(shift_to_quotes(p, {{Date(2021, 1, 1), Date(2021, 2, 15), 1.0, LoadShape::Base},
                                   {Date(2021, 2, 1), Date(2021, 3, 15), 1.0, LoadShape::Base}}),
               InvalidArgumentError);
  EXPECT_THROW(shift_to_quotes(p, {{Date(2021, 1, 15), Date(2021, 2, 20), 1.0, LoadShape::Base},
                                   {Date(2021, 2, 1), Date(2021, 2, 28), 1.0, LoadShape::Base}}),
               InvalidArgumentError);
  EXPECT_FALSE(is_month_period(Date(2021, 1, 2), Date(2021, 1, 31)));
  EXPECT_TRUE(is_month_period(Date(2020, 2, 1), Date(2020, 2, 29)));
}

TEST(Shift, PeakAndBaseTogether) {
  auto p = profile_of(Date(2021, 1, 1), Date(2021, 3, 31), wavy);
  const std::vector<FuturesQuote> q{{Date(2021, 1, 1), Date(2021, 3, 31), 52.0, LoadShape::Base},
                                    {Date(2021, 1, 1), Date(2021, 3, 31), 63.0, LoadShape::Peak},
                                    {Date(2021, 2, 1), Date(2021, 2, 28), 70.0, LoadShape::Peak}};
  const auto c = shift_to_quotes(p, q);
  const auto rep = verify_no_arbitrage(c.series, q);
  ASSERT_EQ(rep.rows.size(), 3u);
  EXPECT_TRUE(rep.pass()) << rep.max_abs_residual();
  PeakWindow w;
  EXPECT_TRUE(w.contains({Date(2021, 1, 4), 8}));
  EXPECT_TRUE(w.contains({Date(2021, 1, 4), 19}));
  EXPECT_FALSE(w.contains({Date(2021, 1, 4), 20}));
  EXPECT_FALSE(w.contains({Date(2021, 1, 9), 12}));
}

TEST(Verify, ResidualsAndEmpty) {
  auto p = profile_of(Date(2021, 1, 1), Date(2021, 1, 31), wavy);
  const double m = period_mean(p.series, Date(2021, 1, 1), Date(2021, 1, 31));
  const std::vector<FuturesQuote> q{{Date(2021, 1, 1), Date(2021, 1, 31), m + 7.5, LoadShape::Base}};
  const auto rep = verify_no_arbitrage(p.series, q);
  EXPECT_NEAR(rep.rows[0].residual, -7.5, 1e-9);
  EXPECT_FALSE(rep.pass());
  const auto empty = verify_no_arbitrage(p.series, {});
  EXPECT_TRUE(empty.rows.empty());
  EXPECT_TRUE(empty.pass());
}

TEST(Corpus, ArbitrageFreeShapePreservingIdempotentLinear) {
  const auto files = corpus();
  ASSERT_GE(files.size(), 4u);
  auto p = profile_of(Date(2020, 1, 1), Date(2021, 12, 31), wavy);
  for (const auto& f : files) {
    SCOPED_TRACE(f.filename().string());
    const auto q = data::load_quotes_csv_file(f.string());
    const auto c = shift_to_quotes(p, q, f.stem().string());
    EXPECT_LE(verify_no_arbitrage(c.series, q).max_abs_residual(), 1e-9);
    EXPECT_EQ(shift_to_quotes({c.series, "test"}, q).series, c.series);

    bool has_peak = false;
    for (const auto& x : q) has_peak = has_peak || x.shape == LoadShape::Peak;
    if (!has_peak) {
      const auto hp = backtest::hdev(p.series, Date(2020, 1, 1), Date(2021, 12, 31));
      const auto hc = backtest::hdev(c.series, Date(2020, 1, 1), Date(2021, 12, 31));
      ASSERT_EQ(hp.size(), hc.size());
      double worst = 0;
      for (std::size_t d = 0; d < hp.size(); ++d)
        for (int h = 0; h < 24; ++h) worst = std::max(worst, std::abs(hp[d][h] - hc[d][h]));
      EXPECT_LE(worst, 1e-9);
    }

    const double k = 12.5;
    auto q2 = q;
    for (auto& x : q2) x.price += k;
    auto p2 = profile_of(Date(2020, 1, 1), Date(2021, 12, 31), [&](const HourlyStamp& t) { return wavy(t) + k; });
    const auto c2 = shift_to_quotes(p2, q2);
    for (std::size_t i = 0; i < c.series.size(); ++i) ASSERT_NEAR(c2.series.value(i), c.series.value(i) + k, 1e-9);
  }
}

TEST(Profile, FromModels) {
  models::LtfDummyModel zero;
  zero.set_coefficients({});
  const auto flat = build_profile(zero, Date(2021, 1, 1), Date(2021, 12, 31));
  EXPECT_EQ(flat.series.size(), 8760u);
  for (double v : flat.series.values()) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(build_profile(zero, Date(2020, 1, 1), Date(2020, 12, 31)).series.size(), 8784u);

  const auto ds = data::synth_generate(3, Date(2018, 1, 1), Date(2018, 12, 31));
  models::ModelOptions opts;
  opts.epochs = 3;
  auto renew = models::make_model(models::parse_model_id("dnn-emb-c2+renew"), opts);
  renew->fit(ds, Date(2018, 12, 31));
  EXPECT_THROW(build_profile(*renew, Date(2019, 1, 1), Date(2019, 1, 31)), FeatureError);

  auto cal = models::make_model(models::parse_model_id("dnn-emb-c2"), opts);
  cal->fit(ds, Date(2018, 12, 31));
  const auto prof = build_profile(*cal, Date(2019, 1, 7), Date(2019, 1, 13));
  // Monday noon vs Sunday noon.
  EXPECT_GT(std::abs(prof.series.value(12) - prof.series.value(6 * 24 + 12)), 1.0);
}
