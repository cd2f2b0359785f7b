#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <set>
#include <sstream>

#include "epf/calendar/features.hpp"
#include "epf/calendar/holidays.hpp"
#include "epf/core/error.hpp"

using namespace epf;
using namespace epf::calendar;

TEST(Holidays, AppendixExamples) {
  EXPECT_EQ(classify_holiday(Date(2019, 12, 25)), HolidayKind::Public);
  EXPECT_EQ(classify_holiday(Date(2019, 5, 30)), HolidayKind::Public);  // Ascension
  EXPECT_EQ(classify_holiday(Date(2019, 5, 31)), HolidayKind::Bridge);
  EXPECT_EQ(classify_holiday(Date(2019, 6, 9)), HolidayKind::Partial);  // Pentecost Sunday
  EXPECT_EQ(classify_holiday(Date(2019, 12, 27)), HolidayKind::Partial);
  EXPECT_EQ(classify_holiday(Date(2019, 12, 31)), HolidayKind::None);
  EXPECT_EQ(classify_holiday(Date(2019, 11, 20)), HolidayKind::Partial);  // Day of Prayer and Repentance
  EXPECT_EQ(classify_holiday(Date(2019, 7, 10)), HolidayKind::None);
}

TEST(Holidays, BridgeRules) {
  // Monday before a Tuesday holiday: 2018-12-31 precedes New Year on Tuesday.
  EXPECT_EQ(classify_holiday(Date(2018, 12, 31)), HolidayKind::Bridge);
  // Friday after Thursday holiday: 2014-05-02 after May Day.
  EXPECT_EQ(classify_holiday(Date(2014, 5, 2)), HolidayKind::Bridge);
  // Single day flanked by public holidays: Holy Saturday.
  EXPECT_EQ(classify_holiday(Date(2019, 4, 20)), HolidayKind::Bridge);
  // Partial beats bridge: Oct 31 2019 is Thursday... Nov 1 2019 (Fri) is partial.
  EXPECT_EQ(classify_holiday(Date(2019, 11, 1)), HolidayKind::Partial);
}

TEST(Holidays, OutOfRangeIsUnsupported) {
  EXPECT_THROW(classify_holiday(Date(2009, 12, 31)), UnsupportedDateError);
  EXPECT_THROW(classify_holiday(Date(2031, 1, 1)), UnsupportedDateError);
  EXPECT_NO_THROW(classify_holiday(Date(2030, 12, 31)));
}

TEST(Holidays, EasterDerivedMatchPublishedTable) {
  // Western Easter Sundays 2010-2019.
  const std::array<Date, 10> easter{Date(2010, 4, 4),  Date(2011, 4, 24), Date(2012, 4, 8), Date(2013, 3, 31),
                                    Date(2014, 4, 20), Date(2015, 4, 5),  Date(2016, 3, 27), Date(2017, 4, 16),
                                    Date(2018, 4, 1),  Date(2019, 4, 21)};
  // Published Ascension Days for the same years.
  const std::array<Date, 10> ascension{Date(2010, 5, 13), Date(2011, 6, 2),  Date(2012, 5, 17), Date(2013, 5, 9),
                                       Date(2014, 5, 29), Date(2015, 5, 14), Date(2016, 5, 5),  Date(2017, 5, 25),
                                       Date(2018, 5, 10), Date(2019, 5, 30)};
  for (int i = 0; i < 10; ++i) {
    EXPECT_EQ(easter_sunday(2010 + i), easter[i]);
    EXPECT_EQ(classify_holiday(easter[i] - 2), HolidayKind::Public);  // Good Friday
    EXPECT_EQ(classify_holiday(easter[i] + 1), HolidayKind::Public);  // Easter Monday
    EXPECT_EQ(classify_holiday(ascension[i]), HolidayKind::Public);
    EXPECT_EQ(ascension[i].weekday(), 3);
    EXPECT_EQ(classify_holiday(easter[i] + 49), HolidayKind::Partial);  // Pentecost Sunday
    EXPECT_EQ(classify_holiday(easter[i] + 50), HolidayKind::Public);   // Pentecost Monday
  }
}

TEST(Holidays, CsvOverride) {
  std::istringstream in("date,kind\n2021-07-04,public\n2021-07-05,bridge\n2021-12-31,none\n");
  const auto cal = HolidayCalendar::from_csv(in);
  EXPECT_EQ(cal.classify(Date(2021, 7, 4)), HolidayKind::Public);
  EXPECT_EQ(cal.classify(Date(2021, 12, 25)), HolidayKind::None);
  EXPECT_THROW(cal.classify(Date(2020, 1, 1)), UnsupportedDateError);
  EXPECT_EQ(day_type5(Date(2021, 7, 5), cal), 4);
}

TEST(DayType, Examples) {
  EXPECT_EQ(day_type5(Date(2019, 7, 9)), 2);   // plain Tuesday
  EXPECT_EQ(day_type5(Date(2019, 6, 9)), 5);   // Pentecost Sunday
  EXPECT_EQ(day_type5(Date(2019, 7, 13)), 4);  // plain Saturday
  EXPECT_EQ(day_type5(Date(2019, 7, 8)), 1);
  EXPECT_EQ(day_type5(Date(2019, 7, 12)), 3);
  EXPECT_EQ(day_type5(Date(2019, 12, 25)), 5);
}

TEST(DayType, ExhaustiveRuleTable) {
  // Rows: weekday Mon..Sun; columns: none, bridge, partial, public.
  constexpr int expected[7][4] = {{1, 4, 4, 5}, {2, 4, 4, 5}, {2, 4, 4, 5}, {2, 4, 4, 5},
                                  {3, 4, 4, 5}, {4, 4, 4, 5}, {5, 5, 5, 5}};
  std::set<std::pair<int, int>> seen;
  for (Date d(2010, 1, 1); d <= Date(2030, 12, 31); ++d) {
    const int k = static_cast<int>(classify_holiday(d));
    seen.insert({d.weekday(), k});
    ASSERT_EQ(day_type5(d), expected[d.weekday()][k]) << d.to_string();
  }
  // Most combinations actually occur in 2010-2030.
  EXPECT_GE(seen.size(), 20u);
}

TEST(DayType, PartitionsEveryYear) {
  for (int y = 2010; y <= 2019; ++y) {
    std::array<int, 6> count{};
    int days = 0;
    for (Date d(y, 1, 1); d <= Date(y, 12, 31); ++d, ++days) {
      const int t = day_type5(d);
      ASSERT_GE(t, 1);
      ASSERT_LE(t, 5);
      ++count[t];
    }
    EXPECT_EQ(count[1] + count[2] + count[3] + count[4] + count[5], days);
    for (int t = 1; t <= 5; ++t) EXPECT_GT(count[t], 0);
  }
}

TEST(Features, Examples) {
  auto cf = calendar_features({Date(2019, 1, 7), 0});
  EXPECT_EQ(cf.weekday10, 0);
  EXPECT_EQ(cf.idx_weekday_hour, 0);
  cf = calendar_features({Date(2019, 12, 25), 23});
  EXPECT_EQ(cf.weekday10, 9);
  EXPECT_EQ(cf.idx_weekday_hour, 239);
  EXPECT_EQ(cf.idx_month_hour, 287);
}

TEST(Features, Weekday10AndIndexInvariants) {
  std::set<int> mh, wh;
  for (Date d(2010, 1, 1); d <= Date(2019, 12, 31); ++d) {
    for (int h : {0, 7, 23}) {
      const auto cf = calendar_features({d, h});
      ASSERT_GE(cf.weekday10, 0);
      ASSERT_LE(cf.weekday10, 9);
      ASSERT_EQ(classify_holiday(d) == HolidayKind::None, cf.weekday10 < 7);
      ASSERT_EQ(cf.idx_month_hour, (cf.month - 1) * 24 + cf.hour);
      ASSERT_EQ(cf.idx_weekday_hour, cf.weekday10 * 24 + cf.hour);
    }
  }
  // Bijectivity on the full ranges.
  for (int m = 1; m <= 12; ++m)
    for (int h = 0; h < 24; ++h) {
      CalendarFeatures cf;
      cf.month = m;
      cf.hour = h;
      cf.idx_month_hour = (m - 1) * 24 + h;
      EXPECT_EQ(cf.idx_month_hour / 24 + 1, m);
      EXPECT_EQ(cf.idx_month_hour % 24, h);
      mh.insert(cf.idx_month_hour);
    }
  for (int w = 0; w < 10; ++w)
    for (int h = 0; h < 24; ++h) wh.insert(w * 24 + h);
  EXPECT_EQ(mh.size(), 288u);
  EXPECT_EQ(*mh.rbegin(), 287);
  EXPECT_EQ(wh.size(), 240u);
  EXPECT_EQ(*wh.rbegin(), 239);
}

TEST(Encoders, Ordinal) {
  CalendarFeatures cf;
  cf.weekday10 = 3;
  cf.month = 6;
  cf.hour = 12;
  cf.year = 2015;
  EXPECT_EQ(encode_ordinal(cf), (std::vector<double>{3, 6, 12, 5}));
  cf = CalendarFeatures{};
  EXPECT_EQ(encode_ordinal(cf), (std::vector<double>{0, 1, 0, 0}));
  cf.weekday10 = 9;
  cf.month = 12;
  cf.hour = 23;
  cf.year = 2019;
  EXPECT_EQ(encode_ordinal(cf), (std::vector<double>{9, 12, 23, 9}));
}

TEST(Encoders, CircleExamplesAndUnitNorm) {
  CalendarFeatures cf;
  cf.month = 12;
  auto v = encode_circle(cf);
  EXPECT_NEAR(v[1], 0.0, 1e-12);
  EXPECT_NEAR(v[2], 1.0, 1e-12);
  cf.month = 3;
  v = encode_circle(cf);
  EXPECT_NEAR(v[1], 1.0, 1e-12);
  EXPECT_NEAR(v[2], 0.0, 1e-12);
  cf.hour = 12;
  v = encode_circle(cf);
  EXPECT_NEAR(v[3], 0.0, 1e-12);
  EXPECT_NEAR(v[4], -1.0, 1e-12);
  for (int m = 1; m <= 12; ++m)
    for (int h = 0; h < 24; ++h) {
      cf.month = m;
      cf.hour = h;
      v = encode_circle(cf);
      EXPECT_NEAR(v[1] * v[1] + v[2] * v[2], 1.0, 1e-12);
      EXPECT_NEAR(v[3] * v[3] + v[4] * v[4], 1.0, 1e-12);
    }
}

TEST(Encoders, EmbeddingIndices) {
  using V = EmbeddingVariable;
  const std::vector<V> all{V::Hour, V::Weekday10, V::Month, V::Year, V::MonthHour, V::WeekdayHour};
  const auto cf = calendar_features({Date(2015, 6, 1), 0});
  EXPECT_EQ(embedding_indices(cf, all), (std::vector<int>{0, 0, 5, 5, 120, 0}));
  const std::vector<V> hour{V::Hour};
  EXPECT_EQ(embedding_indices(calendar_features({Date(2015, 6, 1), 23}), hour), (std::vector<int>{23}));
  const std::vector<V> mh{V::MonthHour};
  EXPECT_EQ(embedding_indices(calendar_features({Date(2015, 12, 1), 23}), mh), (std::vector<int>{287}));
  for (auto v : all) {
    EXPECT_EQ(static_cast<int>(category_labels(v, 2010, 10).size()), vocab_size(v, 10));
  }
}
