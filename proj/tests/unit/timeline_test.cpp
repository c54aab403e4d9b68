// Copyright 2026 The Entity Pulse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entity_pulse/timeline.hpp"

#include <gtest/gtest.h>

#include <random>

namespace entity_pulse {
namespace {

Timestamp at(std::string_view s) {
  auto t = parse_timestamp(s);
  if (!t) t = parse_date_prefix(s);
  EXPECT_TRUE(t.has_value()) << s;
  return t.value_or(Timestamp{});
}

TEST(Timeline, IsoWeekStraddlesNewYear) {
  // 2015-01-01 is a Thursday; its ISO week starts on Monday 2014-12-29.
  const Period w = assign(at("2015-01-01T12:00:00Z"), Granularity::kWeek);
  EXPECT_EQ(format_period(w), "2014-12-29/2015-01-05");
  EXPECT_EQ(assign(at("2014-12-29"), Granularity::kWeek), w);
  EXPECT_EQ(assign(at("2015-01-04T23:59:59Z"), Granularity::kWeek), w);
  EXPECT_NE(assign(at("2015-01-05"), Granularity::kWeek), w);
}

TEST(Timeline, LeapYearHas366DayPeriods) {
  const TimeWindow y2016{at("2016"), at("2017")};
  EXPECT_EQ(enumerate(y2016, Granularity::kDay).size(), 366u);
  EXPECT_EQ(enumerate({at("2015"), at("2016")}, Granularity::kDay).size(), 365u);
  const Period feb = assign(at("2016-02-29T10:00:00Z"), Granularity::kMonth);
  EXPECT_EQ(format_period(feb), "2016-02-01/2016-03-01");
}

TEST(Timeline, MonthAndYearBoundaries) {
  EXPECT_EQ(format_period(assign(at("2015-12-31T23:59:59Z"), Granularity::kMonth)),
            "2015-12-01/2016-01-01");
  EXPECT_EQ(format_period(assign(at("2015-07-15"), Granularity::kYear)), "2015-01-01/2016-01-01");
  EXPECT_EQ(enumerate({at("2015-01"), at("2016-01")}, Granularity::kMonth).size(), 12u);
}

TEST(Timeline, EnumerateCoversPartialEdges) {
  const auto months = enumerate({at("2015-01-15"), at("2015-03-02")}, Granularity::kMonth);
  ASSERT_EQ(months.size(), 3u);
  EXPECT_EQ(format_date(months.front().start), "2015-01-01");
  EXPECT_EQ(format_date(months.back().end), "2015-04-01");
  EXPECT_TRUE(enumerate({at("2015-02"), at("2015-02")}, Granularity::kMonth).empty());
}

TEST(Timeline, EveryInstantLandsInExactlyOnePeriod) {
  std::mt19937_64 rng(3);
  const auto lo = at("1999-01-01").time_since_epoch().count();
  const auto hi = at("2031-01-01").time_since_epoch().count();
  for (Granularity g :
       {Granularity::kDay, Granularity::kWeek, Granularity::kMonth, Granularity::kYear}) {
    for (int i = 0; i < 2000; ++i) {
      const Timestamp t{std::chrono::seconds(lo + static_cast<long>(rng() % (hi - lo)))};
      const Period p = assign(t, g);
      ASSERT_TRUE(p.contains(t));
      EXPECT_EQ(assign(p.start, g), p);
      EXPECT_EQ(next(p).start, p.end);
      EXPECT_FALSE(next(p).contains(t));
      EXPECT_EQ(parse_period(format_period(p)), p);
    }
  }
}

TEST(Timeline, TimestampParsing) {
  EXPECT_EQ(format_timestamp(at("2015-07-05T10:11:12Z")), "2015-07-05T10:11:12Z");
  EXPECT_EQ(parse_timestamp("2015-07-05T10:11:12.987Z"), parse_timestamp("2015-07-05T10:11:12Z"));
  EXPECT_EQ(parse_timestamp("2015-07-05T10:11:12+00:00"), parse_timestamp("2015-07-05T10:11:12Z"));
  EXPECT_FALSE(parse_timestamp("2015-02-30T00:00:00Z"));
  EXPECT_FALSE(parse_timestamp("2015-07-05T24:00:00Z"));
  EXPECT_FALSE(parse_timestamp("yesterday"));
  EXPECT_FALSE(parse_timestamp("2015-07-05T10:11:12+02:00"));
}

TEST(Timeline, DatePrefixes) {
  EXPECT_EQ(format_date(*parse_date_prefix("2015")), "2015-01-01");
  EXPECT_EQ(format_date(*parse_date_prefix("2015-07")), "2015-07-01");
  EXPECT_EQ(format_date(*parse_date_prefix("2015-07-09")), "2015-07-09");
  EXPECT_FALSE(parse_date_prefix("2015-13"));
  EXPECT_FALSE(parse_date_prefix("15-07"));
}

TEST(Timeline, GranularityNames) {
  for (Granularity g :
       {Granularity::kDay, Granularity::kWeek, Granularity::kMonth, Granularity::kYear}) {
    EXPECT_EQ(parse_granularity(to_string(g)), g);
  }
  EXPECT_FALSE(parse_granularity("fortnight"));
}

}  // namespace
}  // namespace entity_pulse
