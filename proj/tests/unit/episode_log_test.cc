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

#include "relsurf/episode_log.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include "relsurf/errors.h"

namespace relsurf {
namespace {

using ::testing::HasSubstr;

class EpisodeLogTest : public ::testing::Test {
 protected:
  void TearDown() override { std::filesystem::remove(path_); }

  std::string Contents() const {
    std::ifstream in(path_, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  void Put(const std::string& text) const {
    std::ofstream out(path_, std::ios::binary);
    out << text;
  }

  std::filesystem::path path_ = std::filesystem::temp_directory_path() /
                                ("relsurf_log_" + std::to_string(::getpid()) + ".jsonl");
};

EpisodeRecord Sample(std::uint32_t trial = 0) {
  EpisodeRecord r;
  r.task_id = "travel-1";
  r.epsilon = 0.1;
  r.lambda_level = 0.2;
  r.profile = "medium";
  r.trial_index = trial;
  r.agent_id = "react";
  r.model_id = "gemini-2.0-flash";
  r.seed = 0xdeadbeefcafef00dULL;
  r.perturbed_description = "Book flight AA-500 for \"Ann\" é";
  r.applied_mrs = {{MrId::kSynonym, 0.05, true}, {MrId::kDateFormat, 0.05, false}};
  r.transcript = {{"system", "s"}, {"user", "u"}, {"assistant", "FINAL: done"}};
  ToolCallRecord call;
  call.index = 0;
  call.tool_name = "hold_flight";
  call.args = {{"flight_id", "AA-500"}};
  call.result_text = "error: timeout retryable=true";
  call.fault_annotation = FaultId::kTransientTimeout;
  call.is_explicit_fault = true;
  r.tool_calls = {call};
  r.fault_events = {{0, FaultId::kTransientTimeout, true, false}};
  TravelState ts;
  r.final_state = ts;
  r.tokens_in = 1200;
  r.tokens_out = 80;
  r.wall_ms = 3100;
  r.cost_usd = 0.000114;
  return r;
}

TEST_F(EpisodeLogTest, RoundTripIsExact) {
  std::vector<EpisodeRecord> recs = {Sample(0), Sample(1)};
  recs[1].success = true;
  recs[1].tool_calls.clear();
  recs[1].fault_events.clear();
  WriteEpisodeLog(recs, path_);
  EXPECT_EQ(ReadEpisodeLog(path_), recs);
  const std::string text = Contents();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text.substr(0, text.find('\n') + 1), EncodeRecordLine(recs[0]));
}

TEST_F(EpisodeLogTest, EncodingIsStableAndSorted) {
  const std::string line = EncodeRecordLine(Sample());
  EXPECT_EQ(line.back(), '\n');
  EXPECT_EQ(line, EncodeRecordLine(Sample()));
  const auto j = nlohmann::json::parse(line);
  std::string prev;
  for (const auto& [k, _] : j.items()) {
    EXPECT_LT(prev, k);
    prev = k;
  }
}

TEST_F(EpisodeLogTest, WriteRejectsInvalidRecords) {
  EpisodeRecord bad = Sample();
  bad.fault_events[0].tool_call_index = 5;
  EXPECT_THROW(WriteEpisodeLog({bad}, path_), ValidationError);
  bad = Sample();
  bad.applied_mrs.pop_back();
  EXPECT_THROW(WriteEpisodeLog({bad}, path_), ValidationError);
  bad = Sample();
  bad.errored = bad.success = true;
  EXPECT_THROW(WriteEpisodeLog({bad}, path_), ValidationError);
}

TEST_F(EpisodeLogTest, ReadReportsTheLine) {
  Put(EncodeRecordLine(Sample()) + "{not json\n");
  try {
    ReadEpisodeLog(path_);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  auto j = nlohmann::json::parse(EncodeRecordLine(Sample()));
  j["tokens_in"] = -5;
  Put(EncodeRecordLine(Sample()) + EncodeRecordLine(Sample()) + j.dump() + "\n");
  try {
    ReadEpisodeLog(path_);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_THAT(e.what(), HasSubstr("line 3"));
  }
}

TEST_F(EpisodeLogTest, AppenderSerializesConcurrentWriters) {
  {
    LogAppender log(path_);
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
      threads.emplace_back([&log, t] {
        for (int i = 0; i < 25; ++i) log.Append(Sample(static_cast<std::uint32_t>(t * 100 + i)));
      });
    }
    for (auto& th : threads) th.join();
    log.Flush();
  }
  auto recs = ReadEpisodeLog(path_);
  ASSERT_EQ(recs.size(), 200u);
  std::set<std::uint32_t> trials;
  for (const auto& r : recs) trials.insert(r.trial_index);
  EXPECT_EQ(trials.size(), 200u);
}

TEST_F(EpisodeLogTest, AppenderAppendsToExistingLog) {
  WriteEpisodeLog({Sample(0)}, path_);
  {
    LogAppender log(path_);
    log.Append(Sample(1));
  }
  EXPECT_EQ(ReadEpisodeLog(path_).size(), 2u);
}

}  // namespace
}  // namespace relsurf
