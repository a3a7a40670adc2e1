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

#include "relsurf/chaos.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "relsurf/errors.h"
#include "relsurf/result_text.h"

namespace relsurf {
namespace {

using ::testing::EndsWith;
using ::testing::HasSubstr;
using ::testing::StartsWith;

const std::vector<TaskSpec>& Suite() {
  static const std::vector<TaskSpec> kSuite = GenerateFullSuite(0);
  return kSuite;
}

const TaskSpec& Task(std::string_view id) { return *FindTask(Suite(), id); }

ToolArgs SearchC2() { return {{"origin", "LON"}, {"dest", "PAR"}, {"date", "2026-01-05"}}; }

// Forces one fault on the first call and returns the session after it.
struct ForcedCall {
  DomainSession session;
  DomainSession::CallOutcome outcome;
};

ForcedCall Force(const TaskSpec& task, FaultId fault, std::string_view tool, const ToolArgs& args,
                 bool empty_explicit = true) {
  SessionOptions opts;
  opts.forced = {{std::string(tool), 0, fault}};
  opts.empty_response_explicit = empty_explicit;
  DomainSession s(task, BuildProfile(0.0), 1, opts);
  auto out = s.Call(tool, args);
  return {std::move(s), std::move(out)};
}

// --- profiles ------------------------------------------------------------------

TEST(ProfileTest, PresetsMatchPublishedTable) {
  EXPECT_EQ(BuildProfile(0.0).failure_rate, 0.0);
  EXPECT_TRUE(BuildProfile(0.0).fault_weights.empty());
  EXPECT_EQ(BuildProfile(0.1).failure_rate, 0.075);
  EXPECT_EQ(BuildProfile(0.2).failure_rate, 0.175);
  EXPECT_EQ(BuildProfile(0.3).failure_rate, 0.275);
  using V = std::vector<std::pair<FaultId, double>>;
  EXPECT_EQ(BuildProfile(0.1).fault_weights,
            (V{{FaultId::kTransientTimeout, 0.4}, {FaultId::kHighLatency, 0.3},
               {FaultId::kEmptyResponse, 0.3}}));
  EXPECT_EQ(BuildProfile(0.2).fault_weights,
            (V{{FaultId::kTransientTimeout, 0.25}, {FaultId::kSoftRateLimit, 0.25},
               {FaultId::kPartialResponse, 0.2}, {FaultId::kSchemaDrift, 0.15},
               {FaultId::kStaleData, 0.15}}));
  EXPECT_EQ(BuildProfile(0.3).fault_weights,
            (V{{FaultId::kTransientTimeout, 0.15}, {FaultId::kConnectionReset, 0.15},
               {FaultId::kHardRateLimit, 0.15}, {FaultId::kPartialResponse, 0.15},
               {FaultId::kSchemaDrift, 0.2}, {FaultId::kCascadingFailure, 0.2}}));
  EXPECT_THROW(BuildProfile(0.25), ConfigError);
}

TEST(ProfileTest, AblationProfilesRunAtMediumRate) {
  for (auto p : {AblationProfile::kTimeoutOnly, AblationProfile::kRateLimitOnly,
                 AblationProfile::kPartialOnly, AblationProfile::kMixed}) {
    FaultProfile prof = BuildProfile(p);
    EXPECT_EQ(prof.failure_rate, 0.175);
    EXPECT_EQ(prof.name, ToString(p));
    EXPECT_EQ(CheckProfileInvariants(prof), "");
    EXPECT_EQ(BuildProfileByName(prof.name), prof);
  }
  EXPECT_EQ(BuildProfile(AblationProfile::kMixed).fault_weights, BuildProfile(0.2).fault_weights);
  EXPECT_THROW(BuildProfileByName("apocalypse"), ConfigError);
}

TEST(ProfileTest, JsonRoundTripAndValidation) {
  for (double l : {0.0, 0.1, 0.2, 0.3}) {
    FaultProfile p = BuildProfile(l);
    EXPECT_EQ(ProfileFromJson(ProfileToJson(p), p.name, l), p);
  }
  nlohmann::json bad = {{"failure_rate", 0.1}, {"fault_weights", {{"TransientTimeout", 0.5}}}};
  EXPECT_THROW(ProfileFromJson(bad, "x", 0.1), std::exception);
  nlohmann::json unknown = {{"failure_rate", 0.1}, {"fault_weights", {{"Meteor", 1.0}}}};
  EXPECT_THROW(ProfileFromJson(unknown, "x", 0.1), std::exception);
}

TEST(ProfileTest, Classification) {
  EXPECT_EQ(DescribeFault(FaultId::kTransientTimeout).kind, FaultKind::kExplicitError);
  EXPECT_TRUE(DescribeFault(FaultId::kTransientTimeout).recoverable);
  EXPECT_FALSE(DescribeFault(FaultId::kHardRateLimit).recoverable);
  EXPECT_EQ(DescribeFault(FaultId::kPartialResponse).kind, FaultKind::kModifiedResponse);
  EXPECT_FALSE(DescribeFault(FaultId::kSchemaDrift).recoverable);
  EXPECT_FALSE(DescribeFault(FaultId::kStaleData).recoverable);
  EXPECT_EQ(DescribeFault(FaultId::kEmptyResponse, true).kind, FaultKind::kExplicitError);
  EXPECT_EQ(DescribeFault(FaultId::kEmptyResponse, false).kind, FaultKind::kModifiedResponse);
}

// --- selection -----------------------------------------------------------------

TEST(SelectFaultTest, DrawMapping) {
  const FaultProfile medium = BuildProfile(0.2);
  EXPECT_FALSE(SelectFault(medium, 0.175, 0.175, 0.0));
  EXPECT_EQ(SelectFault(medium, 0.175, 0.1, 0.0), FaultId::kTransientTimeout);
  EXPECT_EQ(SelectFault(medium, 0.175, 0.1, 0.3), FaultId::kSoftRateLimit);
  EXPECT_EQ(SelectFault(medium, 0.175, 0.1, 0.999999), FaultId::kStaleData);
  EXPECT_FALSE(SelectFault(BuildProfile(0.0), 0.0, 0.0, 0.5));
}

TEST(SelectFaultTest, ConsumesTwoDraws) {
  Rng a(7, RngStream::kFaults), b(7, RngStream::kFaults);
  SelectFault(BuildProfile(0.0), a);
  b.Uniform();
  b.Uniform();
  EXPECT_EQ(a.NextU64(), b.NextU64());
}

TEST(SelectFaultTest, MonteCarloFrequencies) {
  const FaultProfile medium = BuildProfile(0.2);
  Rng rng(99, RngStream::kFaults);
  std::map<FaultId, int> counts;
  int total = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    if (auto f = SelectFault(medium, rng)) {
      counts[*f]++;
      total++;
    }
  }
  EXPECT_NEAR(static_cast<double>(total) / n, 0.175, 0.004);
  for (const auto& [id, w] : medium.fault_weights) {
    EXPECT_NEAR(static_cast<double>(counts[id]) / total, w, 0.01) << ToString(id);
  }
}

// --- injected behaviour ----------------------------------------------------------

TEST(InjectionTest, TimeoutIsExplicitAndLeavesStateAlone) {
  const TaskSpec& task = Task("travel-2");
  auto fc = Force(task, FaultId::kTransientTimeout, "hold_flight", {{"flight_id", "AA-500"}});
  EXPECT_THAT(fc.outcome.observation, StartsWith("error: timeout"));
  EXPECT_THAT(fc.outcome.observation, HasSubstr("retryable=true"));
  EXPECT_TRUE(fc.outcome.explicit_fault);
  EXPECT_EQ(fc.session.state(), task.initial_state);
  EXPECT_EQ(fc.session.simulated_ms(), kBaseToolLatencyMs + kTimeoutLatencyMs);
  // The retry of the same call is exempt and succeeds.
  auto retry = fc.session.Call("hold_flight", {{"flight_id", "AA-500"}});
  EXPECT_THAT(retry.observation, StartsWith("ok: held"));
  ASSERT_EQ(fc.session.fault_events().size(), 1u);
  EXPECT_TRUE(fc.session.fault_events()[0].recovered);
}

TEST(InjectionTest, ExplicitFaultTexts) {
  const TaskSpec& task = Task("travel-2");
  const ToolArgs args = SearchC2();
  EXPECT_THAT(Force(task, FaultId::kConnectionReset, "search_flights", args).outcome.observation,
              StartsWith("error: connection_reset"));
  EXPECT_THAT(Force(task, FaultId::kSoftRateLimit, "search_flights", args).outcome.observation,
              StartsWith("error: rate_limited code=429"));
  EXPECT_THAT(Force(task, FaultId::kHardRateLimit, "search_flights", args).outcome.observation,
              StartsWith("error: forbidden code=403"));
  EXPECT_THAT(Force(task, FaultId::kEmptyResponse, "search_flights", args).outcome.observation,
              StartsWith("error: empty_response"));
  EXPECT_THAT(Force(task, FaultId::kCascadingFailure, "search_flights", args).outcome.observation,
              StartsWith("error: service_unavailable code=503"));
}

TEST(InjectionTest, SoftRateLimitClearsAfterAWait) {
  const TaskSpec& task = Task("travel-2");
  auto fc = Force(task, FaultId::kSoftRateLimit, "search_flights", SearchC2());
  fc.session.BeginTurn();
  EXPECT_THAT(fc.session.Call("search_flights", SearchC2()).observation,
              StartsWith("error: rate_limited"));
  fc.session.BeginTurn();
  EXPECT_THAT(fc.session.Call("search_flights", SearchC2()).observation, StartsWith("flights:"));
  EXPECT_EQ(fc.session.fault_events().size(), 2u);
}

TEST(InjectionTest, HardRateLimitNeverClears) {
  const TaskSpec& task = Task("travel-2");
  auto fc = Force(task, FaultId::kHardRateLimit, "search_flights", SearchC2());
  for (int i = 0; i < 5; ++i) {
    fc.session.BeginTurn();
    EXPECT_THAT(fc.session.Call("search_flights", SearchC2()).observation,
                StartsWith("error: forbidden"));
  }
  // Other tools are unaffected.
  EXPECT_THAT(fc.session.Call("get_itinerary", ToolArgs::object()).observation,
              StartsWith("itinerary:"));
}

TEST(InjectionTest, PartialResponseTruncatesButMutates) {
  const TaskSpec& task = Task("travel-2");
  auto fc = Force(task, FaultId::kPartialResponse, "hold_flight", {{"flight_id", "AA-500"}});
  EXPECT_THAT(fc.outcome.observation, EndsWith(kTruncationMarker));
  EXPECT_FALSE(fc.outcome.explicit_fault);
  EXPECT_EQ(std::get<TravelState>(fc.session.state()).holds.count("AA-500"), 1u);
}

TEST(InjectionTest, SchemaDriftPersistsForTheTool) {
  const TaskSpec& task = Task("travel-2");
  auto fc = Force(task, FaultId::kSchemaDrift, "search_flights", SearchC2());
  EXPECT_THAT(fc.outcome.observation, HasSubstr("cost=300"));
  EXPECT_THAT(fc.outcome.observation, HasSubstr("availability=10"));
  auto again = fc.session.Call("search_flights", SearchC2());
  EXPECT_THAT(again.observation, HasSubstr("cost=300"));
  EXPECT_EQ(again.fault, FaultId::kSchemaDrift);
  EXPECT_THAT(fc.session.Call("hold_flight", {{"flight_id", "AA-500"}}).observation,
              HasSubstr("price=300"));
}

TEST(InjectionTest, StaleDataServesTheEpisodeStartButMutatesTheWorld) {
  const TaskSpec& task = Task("travel-2");
  DomainSession s(task, BuildProfile(0.0), 1,
                  {true, {{"get_itinerary", 1, FaultId::kStaleData}}});
  s.Call("hold_flight", {{"flight_id", "AA-500"}});
  s.Call("confirm_booking", {{"flight_id", "AA-500"}, {"passenger", "Bob"}, {"payment_info", "V"}});
  EXPECT_THAT(s.Call("get_itinerary", ToolArgs::object()).observation, HasSubstr("count=1"));
  EXPECT_THAT(s.Call("get_itinerary", ToolArgs::object()).observation, HasSubstr("count=0"));
  EXPECT_THAT(s.Call("get_itinerary", ToolArgs::object()).observation, HasSubstr("count=0"));
}

TEST(InjectionTest, HighLatencyAnnotates) {
  const TaskSpec& task = Task("travel-2");
  auto fc = Force(task, FaultId::kHighLatency, "search_flights", SearchC2());
  EXPECT_THAT(fc.outcome.observation, EndsWith(" latency_ms=2500"));
  EXPECT_EQ(fc.session.simulated_ms(), kBaseToolLatencyMs + kHighLatencyMs);
}

TEST(InjectionTest, EmptyResponseAsModifiedRunsTheTransition) {
  const TaskSpec& task = Task("travel-2");
  auto fc = Force(task, FaultId::kEmptyResponse, "hold_flight", {{"flight_id", "AA-500"}}, false);
  EXPECT_EQ(fc.outcome.observation, "");
  EXPECT_FALSE(fc.outcome.explicit_fault);
  EXPECT_EQ(std::get<TravelState>(fc.session.state()).holds.size(), 1u);
}

TEST(InjectionTest, CascadeElevatesTheNextThreeCalls) {
  FaultProfile p = BuildProfile(0.1);
  EpisodeFaultContext ctx(Task("travel-2").initial_state);
  ctx.forced = {{"", 0, FaultId::kCascadingFailure}};
  DomainState state = Task("travel-2").initial_state;
  Rng rng(1, RngStream::kFaults);
  ExecuteWithFaults("get_itinerary", ToolArgs::object(), state, p, ctx, rng);
  EXPECT_EQ(ctx.cascade_remaining, 3);
  for (int i = 0; i < 3; ++i) {
    ExecuteWithFaults("get_itinerary", ToolArgs::object(), state, p, ctx, rng);
  }
  EXPECT_EQ(ctx.cascade_remaining, 0);
}

TEST(SessionTest, RejectsUnknownToolsWithoutRecording) {
  DomainSession s(Task("sched-1"), BuildProfile(0.3), 1);
  auto out = s.Call("hold_flight", {{"flight_id", "X"}});
  EXPECT_FALSE(out.executed);
  EXPECT_THAT(out.observation, StartsWith("invalid arguments:"));
  out = s.Call("book_meeting", {{"date", "2026-01-01"}});
  EXPECT_FALSE(out.executed);
  EXPECT_TRUE(s.tool_calls().empty());
}

// --- properties ------------------------------------------------------------------

ToolArgs PlausibleArgs(Rng& rng, const ToolSpec& spec, const TaskSpec& task) {
  ToolArgs args = ToolArgs::object();
  std::vector<std::string> pool;
  for (const auto& e : task.goal_meta.entities) pool.push_back(e.value);
  pool.push_back("2026-01-02");
  pool.push_back("T-1");
  for (const auto& p : spec.params) {
    if (!p.required && rng.Below(2)) continue;
    const std::string v = pool[rng.Below(pool.size())];
    switch (p.type) {
      case ParamType::kStr: args[p.name] = v; break;
      case ParamType::kFloat: args[p.name] = static_cast<double>(1 + rng.Below(300)); break;
      case ParamType::kStrList: args[p.name] = {v}; break;
      case ParamType::kDictList: args[p.name] = {{{"sku", v}, {"qty", 1}}}; break;
    }
  }
  return args;
}

TEST(ChaosPropertyTest, ExplicitFaultsNeverMutateAndReplayMatches) {
  Rng rng(31337);
  int explicit_seen = 0;
  for (int seq = 0; seq < 1000; ++seq) {
    const TaskSpec& task = Suite()[rng.Below(Suite().size())];
    const double lambda = 0.1 * static_cast<double>(1 + rng.Below(3));
    DomainSession s(task, BuildProfile(lambda), rng.NextU64());
    const auto& catalog = ToolCatalog(task.domain);
    const int len = 1 + static_cast<int>(rng.Below(12));
    for (int i = 0; i < len; ++i) {
      const ToolSpec& spec = catalog[rng.Below(catalog.size())];
      const DomainState before = s.state();
      auto out = s.Call(spec.name, PlausibleArgs(rng, spec, task));
      if (rng.Below(3) == 0) s.BeginTurn();
      if (out.explicit_fault) {
        explicit_seen++;
        ASSERT_EQ(s.state(), before) << spec.name << " " << out.observation;
      }
      ASSERT_EQ(CheckStateInvariants(s.state()), "");
    }
    ASSERT_EQ(ReplayToolCalls(task.initial_state, s.tool_calls()), s.state());
    for (const auto& ev : s.fault_events()) {
      ASSERT_LT(ev.tool_call_index, s.tool_calls().size());
      ASSERT_EQ(s.tool_calls()[ev.tool_call_index].is_explicit_fault, ev.was_explicit);
    }
  }
  EXPECT_GT(explicit_seen, 100);
}

TEST(ChaosPropertyTest, SameSeedSameFaults) {
  const TaskSpec& task = Task("travel-2");
  auto run = [&](std::uint64_t seed) {
    DomainSession s(task, BuildProfile(0.3), seed);
    for (int i = 0; i < 30; ++i) s.Call("search_flights", SearchC2());
    return s.tool_calls();
  };
  EXPECT_EQ(run(5), run(5));
  EXPECT_NE(run(5), run(6));
}

}  // namespace
}  // namespace relsurf
