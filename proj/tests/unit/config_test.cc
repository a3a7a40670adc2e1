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

#include "relsurf/config.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <fstream>

#include "relsurf/errors.h"

namespace relsurf {
namespace {

using ::testing::HasSubstr;
using json = nlohmann::json;

TEST(CostTest, ListPrices) {
  const PriceTable prices = DefaultPriceTable();
  EXPECT_DOUBLE_EQ(ComputeCost(1'000'000, 0, "gemini-2.0-flash", prices), 0.075);
  EXPECT_DOUBLE_EQ(ComputeCost(0, 1'000'000, "gemini-2.0-flash", prices), 0.30);
  EXPECT_DOUBLE_EQ(ComputeCost(1'000'000, 1'000'000, "gpt-4o", prices), 12.5);
  EXPECT_NEAR(ComputeCost(2000, 500, "gpt-4o", prices), 0.01, 1e-15);
  EXPECT_EQ(ComputeCost(0, 0, "gpt-4o", prices), 0.0);
  EXPECT_THROW(ComputeCost(1, 1, "mystery", prices), ConfigError);
  EXPECT_THROW(ComputeCost(-1, 1, "gpt-4o", prices), ConfigError);
}

TEST(CostTest, AdditiveOverSplits) {
  const PriceTable prices = DefaultPriceTable();
  for (std::int64_t a : {0, 17, 1234, 99999}) {
    for (std::int64_t b : {0, 3, 800}) {
      EXPECT_NEAR(ComputeCost(a, b, "gpt-4o", prices),
                  ComputeCost(a, 0, "gpt-4o", prices) + ComputeCost(0, b, "gpt-4o", prices),
                  1e-15);
    }
  }
}

TEST(ConfigTest, DefaultsDescribeTheMainGrid) {
  const RunConfig c = ParseRunConfig(json::object());
  EXPECT_EQ(c.k_trials, 2);
  EXPECT_EQ(c.epsilon_levels, (std::vector<double>{0.0, 0.1, 0.2}));
  EXPECT_EQ(c.lambda_levels, (std::vector<double>{0.0, 0.2}));
  EXPECT_EQ(c.agent_ids, (std::vector<std::string>{"react", "reflexion"}));
  EXPECT_EQ(ExpectedEpisodeCount(c, 20), 480u);
}

TEST(ConfigTest, RoundTrip) {
  RunConfig c;
  c.k_trials = 4;
  c.lambda_levels = {0.0, 0.1, 0.2, 0.3};
  c.ablation_profile = AblationProfile::kRateLimitOnly;
  c.temperature = 0.7;
  c.reperturb_per_trial = true;
  c.stub_slip_rate = 0.25;
  c.global_seed = 0xfedcba9876543210ULL;
  const RunConfig back = ParseRunConfig(RunConfigToJson(c));
  EXPECT_EQ(RunConfigToJson(back), RunConfigToJson(c));
  EXPECT_EQ(back.global_seed, c.global_seed);
  EXPECT_EQ(back.ablation_profile, c.ablation_profile);
}

TEST(ConfigTest, Rejections) {
  auto bad = [](const json& j) {
    try {
      ParseRunConfig(j);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_THAT(bad({{"k_trial", 2}}), HasSubstr("unknown config key 'k_trial'"));
  EXPECT_THAT(bad({{"k_trials", 0}}), HasSubstr("k_trials"));
  EXPECT_THAT(bad({{"epsilon_levels", {0.0, 0.15}}}), HasSubstr("epsilon_levels"));
  EXPECT_THAT(bad({{"lambda_levels", {0.2, 0.0}}}), HasSubstr("ascending"));
  EXPECT_THAT(bad({{"lambda_levels", json::array()}}), HasSubstr("empty"));
  EXPECT_THAT(bad({{"agent_ids", {"react", "react"}}}), HasSubstr("duplicate"));
  EXPECT_THAT(bad({{"agent_ids", {"autogpt"}}}), HasSubstr("unknown agent"));
  EXPECT_THAT(bad({{"theta", 1.0}}), HasSubstr("theta"));
  EXPECT_THAT(bad({{"ablation_profile", "everything"}}), HasSubstr("ablation_profile"));
  EXPECT_THAT(bad({{"k_trials", "two"}}), HasSubstr("bad config value"));
  EXPECT_THAT(bad({{"price_table", {{"m", {{"usd_per_1m_input", 1.0}}}}}}),
              HasSubstr("bad config value"));
  EXPECT_THAT(bad(json::array()), HasSubstr("JSON object"));
}

TEST(ConfigTest, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "relsurf_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"k_trials": 4, "lambda_levels": [0.0, 0.1, 0.2, 0.3]})";
  }
  RunConfig c = LoadRunConfig(path);
  EXPECT_EQ(ExpectedEpisodeCount(c, 20), 1920u);
  std::filesystem::remove(path);
  EXPECT_THROW(LoadRunConfig(path), ConfigError);
}

TEST(ConfigTest, AblationNames) {
  EXPECT_EQ(ParseAblationProfile("timeout_only"), AblationProfile::kTimeoutOnly);
  EXPECT_EQ(ParseAblationProfile("mixed"), AblationProfile::kMixed);
  EXPECT_FALSE(ParseAblationProfile("medium"));
  EXPECT_TRUE(IsSupportedLevel(0.1 + 0.2));
  EXPECT_FALSE(IsSupportedLevel(0.4));
}

}  // namespace
}  // namespace relsurf
