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

#include "relsurf/runner.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <unistd.h>

#include "relsurf/domains.h"
#include "relsurf/episode_log.h"
#include "relsurf/errors.h"

namespace relsurf {
namespace {

using ::testing::HasSubstr;

const std::vector<TaskSpec>& Suite() {
  static const std::vector<TaskSpec> kSuite = GenerateFullSuite(SuiteSeed(RunConfig{}));
  return kSuite;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class RunnerTest : public ::testing::Test {
 protected:
  std::filesystem::path Path(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() /
             ("relsurf_runner_" + std::to_string(::getpid()) + "_" + name + ".jsonl");
    std::filesystem::remove(p);
    paths_.push_back(p);
    return p;
  }
  void TearDown() override {
    for (const auto& p : paths_) std::filesystem::remove(p);
  }
  std::vector<std::filesystem::path> paths_;
};

TEST(PlanTest, GridAccounting) {
  RunConfig main;
  ASSERT_EQ(Suite().size(), 20u);
  const auto plan = PlanExperiment(main, Suite());
  EXPECT_EQ(plan.jobs.size(), 480u);
  EXPECT_EQ(plan.jobs.size(), ExpectedEpisodeCount(main, Suite().size()));
  const auto ablation = PlanExperiment(main, Suite(), PlanMode::kAblation);
  EXPECT_EQ(ablation.jobs.size(), 320u);
  RunConfig other = main;
  other.model_id = "gpt-4o";
  EXPECT_EQ(plan.jobs.size() + PlanExperiment(other, Suite()).jobs.size() + ablation.jobs.size(),
            1280u);
  RunConfig single = main;
  single.ablation_profile = AblationProfile::kPartialOnly;
  EXPECT_EQ(PlanExperiment(single, Suite(), PlanMode::kAblation).jobs.size(), 80u);
}

TEST(PlanTest, OrderKeysAndSeeds) {
  const auto plan = PlanExperiment(RunConfig{}, Suite());
  EXPECT_EQ(plan.jobs[0].task_id, plan.jobs[15].task_id);
  EXPECT_EQ(plan.jobs[0].trial_index, 0u);
  EXPECT_EQ(plan.jobs[1].trial_index, 1u);
  EXPECT_EQ(plan.jobs[2].agent_id, "reflexion");
  EXPECT_EQ(plan.jobs[4].profile, "medium");
  EXPECT_EQ(plan.jobs[8].epsilon, 0.1);
  std::set<std::string> keys;
  std::set<std::uint64_t> seeds;
  for (const auto& j : plan.jobs) {
    keys.insert(JobKey(j));
    seeds.insert(j.seed);
  }
  EXPECT_EQ(keys.size(), 480u);
  EXPECT_EQ(seeds.size(), 480u);
  // Both trials see the same perturbed text unless asked otherwise.
  EXPECT_EQ(plan.jobs[8].perturbation_seed, plan.jobs[9].perturbation_seed);
  RunConfig re;
  re.reperturb_per_trial = true;
  const auto replan = PlanExperiment(re, Suite());
  EXPECT_NE(replan.jobs[8].perturbation_seed, replan.jobs[9].perturbation_seed);
}

TEST(PlanTest, AblationProfilesGetDistinctSeeds) {
  const auto plan = PlanExperiment(RunConfig{}, Suite(), PlanMode::kAblation);
  EXPECT_EQ(plan.jobs[0].profile, "timeout_only");
  EXPECT_EQ(plan.jobs[0].lambda_level, 0.2);
  EXPECT_EQ(plan.jobs[0].epsilon, 0.0);
  EXPECT_NE(plan.jobs[0].seed, plan.jobs[4].seed);
  EXPECT_EQ(plan.jobs[12].profile, "mixed");
}

TEST(EpisodeTest, OracleAndStubEpisodes) {
  RunConfig config;
  const TaskSpec& task = Suite()[0];
  EpisodeJob job = PlanExperiment(config, Suite()).jobs[0];
  job.agent_id = "oracle";
  job.model_id = "oracle";
  EpisodeRecord oracle = RunEpisode(job, task, config, nullptr);
  EXPECT_TRUE(oracle.success);
  EXPECT_EQ(oracle.cost_usd, 0.0);
  EXPECT_EQ(CheckRecordInvariants(oracle), "");

  job = PlanExperiment(config, Suite()).jobs[0];
  auto model = StubModelFactory(0.0)(job, task);
  EpisodeRecord react = RunEpisode(job, task, config, model.get());
  EXPECT_TRUE(react.success);
  EXPECT_EQ(RecordKey(react), JobKey(job));
  EXPECT_GT(react.tokens_in, 0);
  EXPECT_NEAR(react.cost_usd,
              ComputeCost(react.tokens_in, react.tokens_out, config.model_id, config.price_table),
              1e-15);
  EXPECT_EQ(react.transcript[0].role, "system");
  EXPECT_EQ(react.transcript[1].content, react.perturbed_description);

  EpisodeRecord orphan = RunEpisode(job, task, config, nullptr);
  EXPECT_TRUE(orphan.errored);
  EXPECT_FALSE(orphan.success);
}

TEST_F(RunnerTest, LogBytesIndependentOfParallelism) {
  RunConfig config;
  const auto plan = PlanExperiment(config, Suite());
  ExecuteOptions opts;
  opts.model_factory = StubModelFactory(0.2);
  opts.parallelism = 1;
  opts.log_path = Path("p1");
  auto s1 = ExecutePlan(plan, Suite(), config, opts);
  opts.parallelism = 8;
  opts.log_path = Path("p8");
  auto s8 = ExecutePlan(plan, Suite(), config, opts);
  EXPECT_EQ(s1.executed, 480u);
  EXPECT_EQ(s8.executed, 480u);
  EXPECT_EQ(s1.errored, 0u);
  EXPECT_EQ(Slurp(paths_[0]), Slurp(paths_[1]));

  const auto recs = ReadEpisodeLog(paths_[0]);
  ASSERT_EQ(recs.size(), 480u);
  for (std::size_t i = 0; i < recs.size(); ++i) ASSERT_EQ(RecordKey(recs[i]), JobKey(plan.jobs[i]));
  const ReplayReport replay = ReplayRecords(recs, Suite());
  EXPECT_EQ(replay.records, 480u);
  EXPECT_EQ(replay.verdict_mismatches, 0u);
  EXPECT_EQ(replay.state_mismatches, 0u);
}

TEST_F(RunnerTest, ResumeAfterInterruption) {
  RunConfig config;
  const auto plan = PlanExperiment(config, Suite());
  ExecuteOptions opts;
  opts.model_factory = StubModelFactory(0.0);
  opts.log_path = Path("resume");
  opts.stop_after = 200;
  auto first = ExecutePlan(plan, Suite(), config, opts);
  EXPECT_EQ(first.executed, 200u);
  opts.stop_after.reset();
  auto second = ExecutePlan(plan, Suite(), config, opts);
  EXPECT_EQ(second.skipped, 200u);
  EXPECT_EQ(second.executed, 280u);
  const auto recs = ReadEpisodeLog(opts.log_path);
  std::set<std::string> keys;
  for (const auto& r : recs) keys.insert(RecordKey(r));
  EXPECT_EQ(recs.size(), 480u);
  EXPECT_EQ(keys.size(), 480u);
  auto third = ExecutePlan(plan, Suite(), config, opts);
  EXPECT_EQ(third.executed, 0u);
}

TEST_F(RunnerTest, BackendFailuresBecomeErroredRecordsAndAbort) {
  RunConfig config;
  const auto plan = PlanExperiment(config, Suite());
  ExecuteOptions opts;
  opts.log_path = Path("errors");
  opts.model_factory = [](const EpisodeJob&, const TaskSpec&) -> std::shared_ptr<ModelClient> {
    throw ClientError(ClientErrorKind::kAuth, "no key");
  };
  auto s = ExecutePlan(plan, Suite(), config, opts);
  EXPECT_TRUE(s.aborted);
  EXPECT_LT(s.executed, 480u);
  const auto recs = ReadEpisodeLog(opts.log_path);
  ASSERT_FALSE(recs.empty());
  EXPECT_TRUE(recs[0].errored);
  EXPECT_THAT(recs[0].error_message, HasSubstr("no key"));
}

TEST_F(RunnerTest, ReplayDetectsTampering) {
  RunConfig config;
  EpisodeJob job = PlanExperiment(config, Suite()).jobs[0];
  auto model = StubModelFactory(0.0)(job, Suite()[0]);
  EpisodeRecord rec = RunEpisode(job, Suite()[0], config, model.get());
  ASSERT_TRUE(rec.success);
  std::vector<EpisodeRecord> recs = {rec};
  EXPECT_EQ(ReplayRecords(recs, Suite()).verdict_mismatches, 0u);
  recs[0].tool_calls.clear();
  const auto report = ReplayRecords(recs, Suite());
  EXPECT_EQ(report.verdict_mismatches, 1u);
  EXPECT_EQ(report.state_mismatches, 1u);
  recs[0].task_id = "nope-1";
  EXPECT_EQ(ReplayRecords(recs, Suite()).verdict_mismatches, 1u);
}

TEST(ValidateTest, SuiteIsSolvable) {
  RunConfig config;
  config.epsilon_levels = {0.0, 0.1, 0.2, 0.3};
  const SuiteValidation v = ValidateSuite(config, Suite());
  EXPECT_EQ(v.tasks, 20u);
  EXPECT_TRUE(v.ok()) << v.problems.front();
}

TEST(PlanTest, RejectsBadInput) {
  EXPECT_THROW(PlanExperiment(RunConfig{}, {}), ConfigError);
  RunConfig bad;
  bad.k_trials = 0;
  EXPECT_THROW(PlanExperiment(bad, Suite()), ConfigError);
  ExecuteOptions opts;
  EXPECT_THROW(ExecutePlan(PlanExperiment(RunConfig{}, Suite()), Suite(), RunConfig{}, opts),
               ConfigError);
}

}  // namespace
}  // namespace relsurf
