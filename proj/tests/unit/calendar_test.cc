// Copyright 2026 The relsurf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relsurf/calendar.h"

#include <gtest/gtest.h>

namespace relsurf {
namespace {

TEST(ParseDateTest, AbsoluteForms) {
  EXPECT_EQ(ParseDate("2026-01-05"), "2026-01-05");
  EXPECT_EQ(ParseDate("Jan 5, 2026"), "2026-01-05");
  EXPECT_EQ(ParseDate("January 5th, 2026"), "2026-01-05");
  EXPECT_EQ(ParseDate("01/05/2026"), "2026-01-05");
  EXPECT_EQ(ParseDate("5 January 2026"), "2026-01-05");
}

TEST(ParseDateTest, RelativeForms) {
  EXPECT_EQ(ParseDate("today"), "2025-12-31");
  EXPECT_EQ(ParseDate("tomorrow"), "2026-01-01");
  EXPECT_EQ(ParseDate("the day after tomorrow"), "2026-01-02");
  EXPECT_EQ(ParseDate("in 5 days"), "2026-01-05");
  EXPECT_EQ(ParseDate("10 days from today"), "2026-01-10");
}

TEST(ParseDateTest, RejectsNonsense) {
  EXPECT_FALSE(ParseDate("2026-02-30"));
  EXPECT_FALSE(ParseDate("someday"));
  EXPECT_FALSE(ParseDate("13/01/2026"));
}

TEST(ParseTimeTest, Forms) {
  EXPECT_EQ(ParseTime("09:00"), "09:00");
  EXPECT_EQ(ParseTime("9:00"), "09:00");
  EXPECT_EQ(ParseTime("9am"), "09:00");
  EXPECT_EQ(ParseTime("9:30 pm"), "21:30");
  EXPECT_EQ(ParseTime("12am"), "00:00");
  EXPECT_EQ(ParseTime("noon"), "12:00");
  EXPECT_FALSE(ParseTime("25:00"));
}

TEST(FormatDateTest, EveryStyleParsesBack) {
  for (int d = -3; d < 400; ++d) {
    const std::string iso = AddDays("2026-01-01", d);
    for (auto style : {DateStyle::kIso, DateStyle::kMonthDayYear, DateStyle::kUsNumeric,
                       DateStyle::kDayMonthYear}) {
      EXPECT_EQ(ParseDate(FormatDate(iso, style)), iso) << FormatDate(iso, style);
    }
  }
}

TEST(RelativePhraseTest, CoversTwoWeeks) {
  EXPECT_EQ(RelativePhrase("2025-12-31"), "today");
  EXPECT_EQ(RelativePhrase("2026-01-01"), "tomorrow");
  for (int d = 0; d <= 14; ++d) {
    const std::string iso = AddDays(kSimulationToday, d);
    auto phrase = RelativePhrase(iso);
    ASSERT_TRUE(phrase) << iso;
    EXPECT_EQ(ParseDate(*phrase), iso) << *phrase;
  }
  EXPECT_FALSE(RelativePhrase(AddDays(kSimulationToday, 15)));
  EXPECT_FALSE(RelativePhrase("2025-12-30"));
}

TEST(DateArithmeticTest, LeapYearsAndMonthEnds) {
  EXPECT_EQ(AddDays("2028-02-28", 1), "2028-02-29");
  EXPECT_EQ(AddDays("2026-02-28", 1), "2026-03-01");
  EXPECT_EQ(AddDays("2026-01-01", -1), "2025-12-31");
  EXPECT_EQ(DaysBetween("2025-12-31", "2026-01-14"), 14);
}

TEST(FindDateMentionsTest, FindsMixedForms) {
  const std::string text = "Fly on Jan 5, 2026, return 01/09/2026 or in 3 days. Not 2026 alone.";
  auto mentions = FindDateMentions(text);
  ASSERT_EQ(mentions.size(), 3u);
  EXPECT_EQ(mentions[0].iso, "2026-01-05");
  EXPECT_EQ(text.substr(mentions[0].pos, mentions[0].len), "Jan 5, 2026");
  EXPECT_EQ(mentions[1].iso, "2026-01-09");
  EXPECT_EQ(mentions[2].iso, "2026-01-03");
}

}  // namespace
}  // namespace relsurf
