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

#include "relsurf/report.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

namespace relsurf {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;

ReliabilitySurface Small() {
  return SurfaceFromFunction({{1, 2}, {0.0, 0.1}, {0.0, 0.2}}, [](const GridPoint& p) {
    return 1 - p.lambda - p.epsilon * p.k;
  });
}

TEST(ReportTest, SurfaceCsv) {
  const std::string csv = SurfaceTable(Small(), TableFormat::kCsv);
  EXPECT_THAT(csv, StartsWith("k,epsilon,lambda,pass_k,ci_low,ci_high,tasks,trials\n"
                              "1,0,0,1.000000,"));
  EXPECT_THAT(csv, HasSubstr("\n2,0.1,0.2,0.600000,"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 9);
}

TEST(ReportTest, SurfaceMarkdown) {
  const std::string md = SurfaceTable(Small(), TableFormat::kMarkdown);
  EXPECT_THAT(md, StartsWith("| k | ε | λ | pass^k (%) |"));
  EXPECT_THAT(md, HasSubstr("| 1 | 0.1 | 0.2 | 70.00 |"));
}

TEST(ReportTest, AblationMarksTheBaselineRow) {
  std::vector<AblationRow> rows = {{"timeout_only", 80, 79, 0.9875, 0.025},
                                   {"rate_limit_only", 80, 75, 0.9375, -0.025},
                                   {"mixed", 80, 77, 0.9625, 0.0}};
  const std::string md = AblationTable(rows, TableFormat::kMarkdown);
  EXPECT_THAT(md, HasSubstr("| timeout_only | 80 | 98.75 | +2.50 |"));
  EXPECT_THAT(md, HasSubstr("| rate_limit_only | 80 | 93.75 | -2.50 |"));
  EXPECT_THAT(md, HasSubstr("| mixed | 80 | 96.25 | (baseline) |"));
  EXPECT_THAT(AblationTable(rows, TableFormat::kCsv),
              HasSubstr("timeout_only,80,79,0.987500,0.025000"));
}

TEST(ReportTest, RecoveryRows) {
  RecoveryStats react{47, 38, 38.0 / 47, 1.2};
  std::vector<std::pair<std::string, RecoveryStats>> rows = {{"react", react},
                                                             {"clean", RecoveryStats{}}};
  const std::string md = RecoveryTable(rows, TableFormat::kMarkdown);
  EXPECT_THAT(md, HasSubstr("| react | 47 | 38 (80.9%) | +1.2 |"));
  EXPECT_THAT(md, HasSubstr("| clean | 0 | 0 | n/a |"));
  const std::string csv = RecoveryTable(rows, TableFormat::kCsv);
  EXPECT_THAT(csv, HasSubstr("react,47,38,0.808511,1.200000"));
  EXPECT_THAT(csv, HasSubstr("clean,0,0,,\n"));
}

TEST(ReportTest, CostAndVolumeAndGradient) {
  EXPECT_THAT(CostTable({{"gpt-4o", 10, 1000, 200, 0.5, 5.0, 40.0}}, TableFormat::kMarkdown),
              HasSubstr("| gpt-4o | 10 | 1000 | 200 | 0.5000 | 5.0000 | 40.0x |"));
  EXPECT_THAT(VolumeTable({{"react", 0.9, 0.975, 0.9}}, TableFormat::kMarkdown),
              HasSubstr("| react | 0.900 | 97.50 | 90.00 |"));
  const std::string g =
      GradientTable({{"react", {1, 0, 0.1}, Axis::kLambda, -0.375}}, TableFormat::kMarkdown);
  EXPECT_THAT(g, HasSubstr("| react | 1 | 0 | 0.1 | lambda | -0.375 |"));
  EXPECT_THAT(g, HasSubstr("per unit of the axis value"));
}

TEST(ReportTest, PlotData) {
  const auto path = std::filesystem::temp_directory_path() / "relsurf_plot_test.csv";
  std::vector<PlotPoint> pts = {{"react", 0.0, 0.975}, {"react", 0.2, 0.9}};
  WritePlotData(path, pts);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "series,x,y\nreact,0,0.975000\nreact,0.2,0.900000\n");
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace relsurf
