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

#include "relsurf/metamorph.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <set>

#include "relsurf/domains.h"
#include "relsurf/errors.h"

namespace relsurf {
namespace {

using ::testing::HasSubstr;
using ::testing::Not;

const std::vector<TaskSpec>& Suite() {
  static const std::vector<TaskSpec> kSuite = GenerateFullSuite(0);
  return kSuite;
}

const TaskSpec& Task(std::string_view id) { return *FindTask(Suite(), id); }

std::optional<std::string> Apply(MrId id, std::string_view task_id, std::uint64_t seed = 1) {
  Rng rng(seed, RngStream::kPerturbation);
  const TaskSpec& t = Task(task_id);
  return ApplyMr(id, t.description, t.goal_meta, rng);
}

TEST(LexiconTest, DefaultLoads) {
  const Lexicon& lex = DefaultLexicon();
  EXPECT_GE(lex.version, 1);
  EXPECT_FALSE(lex.synonyms.empty());
  EXPECT_EQ(lex.distractors.size(), 4u);
  EXPECT_THAT(lex.correction_template, HasSubstr("{value}"));
  EXPECT_THROW(LexiconFromJson(nlohmann::json::object()), ConfigError);
}

TEST(LexiconTest, RenderTemplateFillsRoles) {
  EXPECT_EQ(RenderTemplate("Meet about '{topic}' at {time}.", Task("sched-1").goal_meta),
            "Meet about 'Review' at 09:00.");
}

TEST(MrTest, Categories) {
  EXPECT_EQ(CategoryOf(MrId::kSynonym), MrCategory::kLinguistic);
  EXPECT_EQ(CategoryOf(MrId::kVoice), MrCategory::kLinguistic);
  EXPECT_EQ(CategoryOf(MrId::kSplitMerge), MrCategory::kStructural);
  EXPECT_EQ(CategoryOf(MrId::kCorrection), MrCategory::kContextual);
  EXPECT_EQ(CategoryOf(MrId::kRelativeTime), MrCategory::kTemporal);
}

TEST(MrTest, ExamplesOnSchedulingTask) {
  EXPECT_EQ(Apply(MrId::kSynonym, "sched-1"),
            "Book a session about 'Review' on 2026-01-01 at 09:00.");
  EXPECT_EQ(Apply(MrId::kVoice, "sched-1"),
            "A meeting should be booked about 'Review' on 2026-01-01 at 09:00.");
  EXPECT_EQ(Apply(MrId::kDateFormat, "sched-1"),
            "Book a meeting about 'Review' on 1 January 2026 at 09:00.");
  EXPECT_EQ(Apply(MrId::kRelativeTime, "sched-1"),
            "Book a meeting about 'Review' tomorrow at 09:00.");
  EXPECT_EQ(Apply(MrId::kRelativeTime, "travel-2"),
            "Book the cheapest flight from LON to PAR in 5 days for Bob.");
}

TEST(MrTest, CorrectionRestatesTheRealValueLast) {
  auto out = Apply(MrId::kCorrection, "ecom-1");
  ASSERT_TRUE(out);
  EXPECT_THAT(*out, HasSubstr("Actually, make that C-9394 instead."));
  EXPECT_THAT(*out, Not(HasSubstr("customer C-9394")));
}

TEST(MrTest, DistractorAppendsWithoutTouchingTheGoal) {
  const std::string& base = Task("travel-2").description;
  auto out = Apply(MrId::kDistractor, "travel-2");
  ASSERT_TRUE(out);
  EXPECT_EQ(out->substr(0, base.size()), base);
  EXPECT_GT(out->size(), base.size());
}

TEST(MrTest, NoSiteMeansNotApplicable) {
  EXPECT_FALSE(Apply(MrId::kDateFormat, "support-1"));
  EXPECT_FALSE(Apply(MrId::kRelativeTime, "ecom-1"));
}

TEST(MrTest, ParaphraseHookOverridesAndFallsBack) {
  const TaskSpec& t = Task("sched-1");
  MrOptions opts;
  opts.paraphrase_hook = [](std::string_view, const GoalMeta&) -> std::optional<std::string> {
    return std::string("Please set up 'Review' on 2026-01-01 at 09:00.");
  };
  Rng rng(1, RngStream::kPerturbation);
  EXPECT_EQ(ApplyMr(MrId::kParaphrase, t.description, t.goal_meta, rng, opts),
            "Please set up 'Review' on 2026-01-01 at 09:00.");
  opts.paraphrase_hook = [](std::string_view, const GoalMeta&) { return std::nullopt; };
  Rng rng2(1, RngStream::kPerturbation);
  auto fallback = ApplyMr(MrId::kParaphrase, t.description, t.goal_meta, rng2, opts);
  ASSERT_TRUE(fallback);
  EXPECT_NE(*fallback, t.description);
}

TEST(PlanTest, SizesPerLevel) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    EXPECT_EQ(PlanPerturbation(0.0, seed).selected_mrs.size(), 0u);
    EXPECT_EQ(PlanPerturbation(0.1, seed).selected_mrs.size(), 2u);
    EXPECT_EQ(PlanPerturbation(0.2, seed).selected_mrs.size(), 4u);
    const auto p3 = PlanPerturbation(0.3, seed);
    EXPECT_EQ(p3.selected_mrs.size(), 6u);
    EXPECT_NEAR(p3.TotalWeight(), 0.3, 1e-12);
    std::set<MrId> ids;
    for (const auto& m : p3.selected_mrs) ids.insert(m.id);
    EXPECT_EQ(ids.size(), 6u);
  }
  EXPECT_THROW(PlanPerturbation(0.15, 1), ConfigError);
}

TEST(PlanTest, LowTierDrawsLexicalAndTemporal) {
  const std::set<MrId> pool = {MrId::kSynonym, MrId::kDateFormat, MrId::kReordering,
                               MrId::kRelativeTime};
  std::set<MrId> seen;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    for (const auto& m : PlanPerturbation(0.1, seed).selected_mrs) {
      EXPECT_TRUE(pool.count(m.id));
      seen.insert(m.id);
    }
  }
  EXPECT_EQ(seen, pool);
}

TEST(PlanTest, HigherLevelsExtendLowerOnes) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto a = PlanPerturbation(0.1, seed).selected_mrs;
    const auto b = PlanPerturbation(0.2, seed).selected_mrs;
    const auto c = PlanPerturbation(0.3, seed).selected_mrs;
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin()));
    EXPECT_TRUE(std::equal(b.begin(), b.end(), c.begin()));
  }
}

TEST(PerturbTest, EpsilonZeroIsIdentity) {
  for (const auto& t : Suite()) {
    auto p = PerturbTask(t, 0.0, 42);
    EXPECT_EQ(p.task, t);
    EXPECT_TRUE(p.applied_mrs.empty());
  }
}

TEST(PerturbTest, OnlyTheDescriptionChanges) {
  auto p = PerturbTask(Task("travel-2"), 0.3, 9);
  TaskSpec restored = p.task;
  restored.description = Task("travel-2").description;
  EXPECT_EQ(restored, Task("travel-2"));
  EXPECT_EQ(p.applied_mrs.size(), 6u);
}

// Property: every perturbation is deterministic, keeps all goal entities
// visible, and passes the task invariants.
TEST(PerturbPropertyTest, SemanticsPreserved) {
  int applied = 0, total = 0;
  for (const auto& t : Suite()) {
    for (double eps : {0.1, 0.2, 0.3}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto p = PerturbTask(t, eps, seed);
        ASSERT_TRUE(GoalEntitiesVisible(t.goal_meta, p.task.description))
            << t.task_id << " eps=" << eps << " seed=" << seed << ": " << p.task.description;
        ASSERT_EQ(CheckTaskInvariants(p.task), "") << p.task.description;
        ASSERT_EQ(PerturbTask(t, eps, seed).task.description, p.task.description);
        for (const auto& a : p.applied_mrs) {
          total++;
          applied += a.applied ? 1 : 0;
        }
      }
    }
  }
  // Most relations find a site on most tasks.
  EXPECT_GT(static_cast<double>(applied) / total, 0.6);
}

}  // namespace
}  // namespace relsurf
