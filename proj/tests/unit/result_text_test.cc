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

#include "relsurf/result_text.h"

#include <gtest/gtest.h>

#include "relsurf/rng.h"

namespace relsurf {
namespace {

TEST(ResultBuilderTest, SummaryAndRows) {
  std::string text = ResultBuilder("flights", "found")
                         .Add("origin", "LON")
                         .Add("count", 2)
                         .Row()
                         .Add("id", "AA-500")
                         .AddAmount("price", 300)
                         .Row()
                         .Add("id", "BA-200")
                         .AddAmount("price", 499.5)
                         .str();
  EXPECT_EQ(text, "flights: found origin=LON count=2 | id=AA-500 price=300 | id=BA-200 price=499.50");
}

TEST(ResultBuilderTest, QuotesAwkwardValues) {
  EXPECT_EQ(QuoteValue("plain"), "plain");
  EXPECT_EQ(QuoteValue(""), "\"\"");
  EXPECT_EQ(QuoteValue("two words"), "\"two words\"");
  EXPECT_EQ(QuoteValue("a=b"), "\"a=b\"");
  EXPECT_EQ(QuoteValue("say \"hi\""), "\"say \\\"hi\\\"\"");
}

TEST(ParseResultTest, RoundTripsBuilderOutput) {
  std::string text = ResultBuilder("ok", "created")
                         .Add("ticket_id", "T-3")
                         .Add("subject", "Cannot log in | again")
                         .Add("note", "")
                         .Row()
                         .Add("x", "a\\b")
                         .str();
  auto parsed = ParseResult(text);
  ASSERT_TRUE(parsed);
  EXPECT_EQ(parsed->status, "ok");
  EXPECT_EQ(parsed->verb, "created");
  EXPECT_EQ(parsed->Get("ticket_id"), "T-3");
  EXPECT_EQ(parsed->Get("subject"), "Cannot log in | again");
  EXPECT_EQ(parsed->Get("note"), "");
  ASSERT_EQ(parsed->rows.size(), 1u);
  EXPECT_EQ(FieldValue(parsed->rows[0], "x"), "a\\b");
}

TEST(ParseResultTest, ToleratesTruncation) {
  auto parsed = ParseResult("ok: created ticket_id=T-3 subject=\"Cannot lo...[truncated]");
  ASSERT_TRUE(parsed);
  EXPECT_EQ(parsed->Get("ticket_id"), "T-3");
}

TEST(ParseResultTest, RejectsTextWithoutStatus) {
  EXPECT_FALSE(ParseResult(""));
  EXPECT_FALSE(ParseResult("no status here"));
}

TEST(RenameKeysTest, RenamesKeysNotValues) {
  std::string text = "flights: found | id=A price=3 note=\"price=9\"";
  EXPECT_EQ(RenameKeys(text, {{"price", "cost"}}),
            "flights: found | id=A cost=3 note=\"price=9\"");
}

TEST(FormatAmountTest, IntegralAndFractional) {
  EXPECT_EQ(FormatAmount(300), "300");
  EXPECT_EQ(FormatAmount(12.5), "12.50");
  EXPECT_EQ(FormatAmount(0.1 + 0.2), "0.30");
  EXPECT_DOUBLE_EQ(RoundCents(10.005 + 0.0001), 10.01);
}

TEST(ResultTextPropertyTest, RandomValuesRoundTrip) {
  Rng rng(42);
  const std::string alphabet = "ab Z9=|\"\\-.,";
  for (int iter = 0; iter < 2000; ++iter) {
    ResultBuilder b("ok", "verb");
    std::vector<std::string> values;
    const int n = 1 + static_cast<int>(rng.Below(4));
    for (int i = 0; i < n; ++i) {
      std::string v;
      const int len = static_cast<int>(rng.Below(8));
      for (int c = 0; c < len; ++c) v += alphabet[rng.Below(alphabet.size())];
      values.push_back(v);
      b.Add("k" + std::to_string(i), v);
    }
    auto parsed = ParseResult(b.str());
    ASSERT_TRUE(parsed) << b.str();
    for (int i = 0; i < n; ++i) {
      EXPECT_EQ(parsed->Get("k" + std::to_string(i)), values[i]) << b.str();
    }
  }
}

}  // namespace
}  // namespace relsurf
