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

#include <benchmark/benchmark.h>

#include "relsurf/agents.h"
#include "relsurf/chaos.h"
#include "relsurf/domains.h"
#include "relsurf/metamorph.h"
#include "relsurf/metrics.h"
#include "relsurf/runner.h"

namespace relsurf {
namespace {

const std::vector<TaskSpec>& Suite() {
  static const std::vector<TaskSpec> kSuite = GenerateFullSuite(0);
  return kSuite;
}

void BM_EstimatePassK(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  int s = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EstimatePassK(n, s, n / 2 + 1));
    s = (s + 1) % (n + 1);
  }
}
BENCHMARK(BM_EstimatePassK)->Arg(4)->Arg(12)->Arg(64);

void BM_ExecuteWithFaults(benchmark::State& state) {
  const TaskSpec& task = *FindTask(Suite(), "travel-2");
  const FaultProfile profile = BuildProfile(0.1 * static_cast<double>(state.range(0)));
  const ToolArgs args = {{"origin", "LON"}, {"dest", "PAR"}, {"date", "2026-01-05"}};
  Rng rng(1, RngStream::kFaults);
  EpisodeFaultContext ctx(task.initial_state);
  DomainState world = task.initial_state;
  for (auto _ : state) {
    ctx.turn++;
    benchmark::DoNotOptimize(ExecuteWithFaults("search_flights", args, world, profile, ctx, rng));
  }
}
BENCHMARK(BM_ExecuteWithFaults)->DenseRange(0, 3);

void BM_PerturbTask(benchmark::State& state) {
  const double eps = 0.1 * static_cast<double>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const TaskSpec& task = Suite()[seed % Suite().size()];
    benchmark::DoNotOptimize(PerturbTask(task, eps, seed++));
  }
}
BENCHMARK(BM_PerturbTask)->DenseRange(1, 3);

void BM_OracleEpisode(benchmark::State& state) {
  const FaultProfile profile = BuildProfile(0.1 * static_cast<double>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    const TaskSpec& task = Suite()[seed % Suite().size()];
    DomainSession session(task, profile, seed++);
    benchmark::DoNotOptimize(RunOracle(task, session));
  }
}
BENCHMARK(BM_OracleEpisode)->DenseRange(0, 3);

void BM_StubReactEpisode(benchmark::State& state) {
  RunConfig config;
  const auto plan = PlanExperiment(config, Suite());
  const auto factory = StubModelFactory(0.2);
  std::size_t i = 0;
  for (auto _ : state) {
    const EpisodeJob& job = plan.jobs[i++ % plan.jobs.size()];
    const TaskSpec& task = *FindTask(Suite(), job.task_id);
    auto model = factory(job, task);
    benchmark::DoNotOptimize(RunEpisode(job, task, config, model.get()));
  }
}
BENCHMARK(BM_StubReactEpisode);

void BM_BuildSurface(benchmark::State& state) {
  std::vector<EpisodeRecord> recs;
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    for (double eps : {0.0, 0.1, 0.2}) {
      for (double lambda : {0.0, 0.2}) {
        for (int trial = 0; trial < 4; ++trial) {
          EpisodeRecord r;
          r.task_id = "t" + std::to_string(t);
          r.epsilon = eps;
          r.lambda_level = lambda;
          r.profile = lambda == 0 ? "baseline" : "medium";
          r.success = rng.Below(10) != 0;
          recs.push_back(std::move(r));
        }
      }
    }
  }
  const GridAxes axes{{1, 2, 3, 4}, {0.0, 0.1, 0.2}, {0.0, 0.2}};
  for (auto _ : state) benchmark::DoNotOptimize(BuildSurface(recs, axes));
}
BENCHMARK(BM_BuildSurface);

}  // namespace
}  // namespace relsurf

BENCHMARK_MAIN();
