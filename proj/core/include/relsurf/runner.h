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

#ifndef RELSURF_RUNNER_H_
#define RELSURF_RUNNER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relsurf/agents.h"
#include "relsurf/config.h"
#include "relsurf/records.h"
#include "relsurf/task.h"

namespace relsurf {

struct EpisodeJob {
  std::string task_id;
  double epsilon = 0.0;
  double lambda_level = 0.0;
  std::string profile;
  std::string agent_id;
  std::string model_id;
  std::uint32_t trial_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t perturbation_seed = 0;
};

enum class PlanMode { kMain, kAblation };

struct ExperimentPlan {
  PlanMode mode = PlanMode::kMain;
  std::vector<EpisodeJob> jobs;
  std::size_t num_tasks = 0;
  std::size_t num_epsilons = 0;
  std::size_t num_lambdas = 0;  // fault profiles in ablation mode
  std::size_t num_agents = 0;
  std::size_t k_trials = 0;
};

// Cross product task x epsilon x lambda x agent x trial, task-major and
// trial-minor. Ablation mode runs epsilon 0 and replaces the lambda axis by
// the ablation profiles (all four unless the config names one).
ExperimentPlan PlanExperiment(const RunConfig& config,
                              std::span<const TaskSpec> tasks,
                              PlanMode mode = PlanMode::kMain);

// Identity of a grid cell trial, shared by jobs and records (resume).
std::string JobKey(const EpisodeJob& job);
std::string RecordKey(const EpisodeRecord& record);

// Builds the model backend for one episode. Called from worker threads.
using ModelFactory = std::function<std::shared_ptr<ModelClient>(
    const EpisodeJob& job, const TaskSpec& task)>;

// Per-episode PlannedModelClient; no network.
ModelFactory StubModelFactory(double slip_rate);

// One episode end to end: perturb, wrap tools with faults, run the agent,
// verify, price. model may be null for the oracle agent.
EpisodeRecord RunEpisode(const EpisodeJob& job, const TaskSpec& task,
                         const RunConfig& config, ModelClient* model,
                         SessionOptions session_options = {});

struct ExecuteOptions {
  int parallelism = 1;
  std::filesystem::path log_path;
  ModelFactory model_factory;
  // Stop after this many new records (simulates an interrupted run).
  std::optional<std::size_t> stop_after;
  double max_error_fraction = 0.10;
};

struct ExecuteSummary {
  std::size_t planned = 0;
  std::size_t skipped = 0;  // already present in the log
  std::size_t executed = 0;
  std::size_t errored = 0;
  bool aborted = false;
};

// Runs every job not yet in the log and appends records in plan order, so
// the log bytes do not depend on the degree of parallelism.
ExecuteSummary ExecutePlan(const ExperimentPlan& plan,
                           std::span<const TaskSpec> tasks,
                           const RunConfig& config,
                           const ExecuteOptions& options);

struct ReplayReport {
  std::size_t records = 0;
  std::size_t verdict_mismatches = 0;
  std::size_t state_mismatches = 0;
  std::vector<std::string> details;
};

ReplayReport ReplayRecords(std::span<const EpisodeRecord> records,
                           std::span<const TaskSpec> tasks);

struct SuiteValidation {
  std::size_t tasks = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Task invariants plus oracle solvability at epsilon 0, lambda 0.
SuiteValidation ValidateSuite(const RunConfig& config,
                              std::span<const TaskSpec> tasks);

// Suite seed for a config.
std::uint64_t SuiteSeed(const RunConfig& config);

}  // namespace relsurf

#endif  // RELSURF_RUNNER_H_
