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

#include <atomic>
#include <cstdio>
#include <mutex>
#include <set>
#include <thread>

#include "relsurf/chaos.h"
#include "relsurf/domains.h"
#include "relsurf/episode_log.h"
#include "relsurf/errors.h"
#include "relsurf/metamorph.h"
#include "relsurf/rng.h"
#include "relsurf/seed.h"

namespace relsurf {

namespace {

constexpr const char* kOracleAgent = "oracle";

std::string Level(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::uint64_t NameHash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return SplitMix64(h);
}

}  // namespace

std::uint64_t SuiteSeed(const RunConfig& config) { return config.global_seed; }

ExperimentPlan PlanExperiment(const RunConfig& config, std::span<const TaskSpec> tasks,
                              PlanMode mode) {
  ValidateRunConfig(config);
  if (tasks.empty()) throw ConfigError("no tasks to plan");

  struct FaultLevel {
    FaultProfile profile;
    std::uint64_t seed_salt;
  };
  std::vector<double> epsilons = config.epsilon_levels;
  std::vector<FaultLevel> levels;
  if (mode == PlanMode::kMain) {
    for (double l : config.lambda_levels) levels.push_back({BuildProfile(l), 0});
  } else {
    epsilons = {0.0};
    std::vector<AblationProfile> profiles = {
        AblationProfile::kTimeoutOnly, AblationProfile::kRateLimitOnly,
        AblationProfile::kPartialOnly, AblationProfile::kMixed};
    if (config.ablation_profile) profiles = {*config.ablation_profile};
    for (auto p : profiles) {
      levels.push_back({BuildProfile(p), NameHash(ToString(p))});
    }
  }

  ExperimentPlan plan;
  plan.mode = mode;
  plan.num_tasks = tasks.size();
  plan.num_epsilons = epsilons.size();
  plan.num_lambdas = levels.size();
  plan.num_agents = config.agent_ids.size();
  plan.k_trials = static_cast<std::size_t>(config.k_trials);
  for (const auto& task : tasks) {
    for (double eps : epsilons) {
      const std::uint64_t text_seed = DerivePerturbationSeed(config.global_seed, task.task_id, eps);
      for (const auto& level : levels) {
        for (const auto& agent : config.agent_ids) {
          for (int trial = 0; trial < config.k_trials; ++trial) {
            EpisodeJob job;
            job.task_id = task.task_id;
            job.epsilon = eps;
            job.lambda_level = level.profile.lambda_level;
            job.profile = level.profile.name;
            job.agent_id = agent;
            job.model_id = agent == kOracleAgent ? kOracleAgent : config.model_id;
            job.trial_index = static_cast<std::uint32_t>(trial);
            job.seed = DeriveEpisodeSeed(config.global_seed ^ level.seed_salt, task.task_id, eps,
                                         job.lambda_level, agent, job.trial_index);
            job.perturbation_seed =
                config.reperturb_per_trial
                    ? SplitMix64(text_seed ^ (static_cast<std::uint64_t>(trial) + 1))
                    : text_seed;
            plan.jobs.push_back(std::move(job));
          }
        }
      }
    }
  }
  return plan;
}

std::string JobKey(const EpisodeJob& job) {
  return job.task_id + "|" + Level(job.epsilon) + "|" + Level(job.lambda_level) + "|" +
         job.profile + "|" + job.agent_id + "|" + job.model_id + "|" +
         std::to_string(job.trial_index);
}

std::string RecordKey(const EpisodeRecord& r) {
  return r.task_id + "|" + Level(r.epsilon) + "|" + Level(r.lambda_level) + "|" + r.profile +
         "|" + r.agent_id + "|" + r.model_id + "|" + std::to_string(r.trial_index);
}

ModelFactory StubModelFactory(double slip_rate) {
  return [slip_rate](const EpisodeJob& job, const TaskSpec& task) {
    return std::make_shared<PlannedModelClient>(task, job.seed, slip_rate);
  };
}

EpisodeRecord RunEpisode(const EpisodeJob& job, const TaskSpec& task, const RunConfig& config,
                         ModelClient* model, SessionOptions session_options) {
  EpisodeRecord rec;
  rec.task_id = job.task_id;
  rec.epsilon = job.epsilon;
  rec.lambda_level = job.lambda_level;
  rec.profile = job.profile;
  rec.trial_index = job.trial_index;
  rec.agent_id = job.agent_id;
  rec.model_id = job.model_id;
  rec.seed = job.seed;

  PerturbedTask perturbed = PerturbTask(task, job.epsilon, job.perturbation_seed);
  rec.perturbed_description = perturbed.task.description;
  rec.applied_mrs = perturbed.applied_mrs;

  session_options.empty_response_explicit = config.empty_response_explicit;
  DomainSession session(perturbed.task, BuildProfileByName(job.profile), job.seed,
                        std::move(session_options));

  Trajectory traj;
  if (job.agent_id == kOracleAgent) {
    traj = RunOracle(perturbed.task, session, RetryPolicy{}, config.max_turns_per_episode);
  } else if (!model) {
    traj.errored = true;
    traj.error_message = "no model backend for agent " + job.agent_id;
  } else {
    AgentOptions options;
    options.max_turns = config.max_turns_per_episode;
    options.max_reflections = config.max_reflections;
    options.temperature = config.temperature;
    options.seed_hint = job.seed;
    traj = job.agent_id == "reflexion" ? RunReflexion(perturbed.task, session, *model, options)
                                       : RunReact(perturbed.task, session, *model, options);
  }

  rec.transcript = std::move(traj.transcript);
  rec.tool_calls = session.tool_calls();
  rec.fault_events = session.fault_events();
  rec.final_state = session.state();
  rec.errored = traj.errored;
  rec.error_message = traj.error_message;
  rec.success = !rec.errored && Verify(task, task.initial_state, rec.final_state);
  rec.tokens_in = traj.usage.input;
  rec.tokens_out = traj.usage.output;
  rec.wall_ms = session.simulated_ms() + traj.model_latency_ms;
  if (config.price_table.count(rec.model_id)) {
    rec.cost_usd = ComputeCost(rec.tokens_in, rec.tokens_out, rec.model_id, config.price_table);
  }
  return rec;
}

ExecuteSummary ExecutePlan(const ExperimentPlan& plan, std::span<const TaskSpec> tasks,
                           const RunConfig& config, const ExecuteOptions& options) {
  ExecuteSummary summary;
  summary.planned = plan.jobs.size();
  if (options.log_path.empty()) throw ConfigError("no episode log path given");

  std::set<std::string> done;
  if (std::filesystem::exists(options.log_path)) {
    for (const auto& r : ReadEpisodeLog(options.log_path)) done.insert(RecordKey(r));
  }
  std::vector<const EpisodeJob*> pending;
  for (const auto& job : plan.jobs) {
    if (done.count(JobKey(job))) {
      summary.skipped++;
      continue;
    }
    if (!FindTask(tasks, job.task_id)) throw ConfigError("plan names unknown task " + job.task_id);
    if (job.agent_id != kOracleAgent && !options.model_factory) {
      throw ConfigError("agent " + job.agent_id + " needs a model backend");
    }
    pending.push_back(&job);
  }
  if (options.stop_after && pending.size() > *options.stop_after) {
    pending.resize(*options.stop_after);
  }

  LogAppender log(options.log_path);
  std::vector<std::optional<EpisodeRecord>> results(pending.size());
  std::mutex mu;
  std::size_t next_to_write = 0;
  std::atomic<std::size_t> next_job{0};
  std::atomic<bool> abort{false};
  const double error_budget = options.max_error_fraction * static_cast<double>(pending.size());

  auto worker = [&] {
    for (;;) {
      if (abort.load()) return;
      const std::size_t i = next_job.fetch_add(1);
      if (i >= pending.size()) return;
      const EpisodeJob& job = *pending[i];
      const TaskSpec& task = *FindTask(tasks, job.task_id);
      EpisodeRecord rec;
      try {
        std::shared_ptr<ModelClient> model;
        if (job.agent_id != kOracleAgent) model = options.model_factory(job, task);
        rec = RunEpisode(job, task, config, model.get());
      } catch (const std::exception& e) {
        rec = EpisodeRecord{};
        rec.task_id = job.task_id;
        rec.epsilon = job.epsilon;
        rec.lambda_level = job.lambda_level;
        rec.profile = job.profile;
        rec.trial_index = job.trial_index;
        rec.agent_id = job.agent_id;
        rec.model_id = job.model_id;
        rec.seed = job.seed;
        for (const auto& mr : PlanPerturbation(job.epsilon, job.perturbation_seed).selected_mrs) {
          rec.applied_mrs.push_back({mr.id, mr.weight, false});
        }
        rec.final_state = task.initial_state;
        rec.errored = true;
        rec.error_message = e.what();
      }
      std::lock_guard<std::mutex> lock(mu);
      if (rec.errored) {
        summary.errored++;
        if (static_cast<double>(summary.errored) > error_budget) abort.store(true);
      }
      results[i] = std::move(rec);
      // Records go out in plan order whatever order workers finish in.
      while (next_to_write < results.size() && results[next_to_write]) {
        log.Append(*results[next_to_write]);
        results[next_to_write].reset();
        next_to_write++;
        summary.executed++;
      }
    }
  };

  const int threads = std::max(1, options.parallelism);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  log.Flush();
  summary.aborted = abort.load();
  return summary;
}

ReplayReport ReplayRecords(std::span<const EpisodeRecord> records,
                           std::span<const TaskSpec> tasks) {
  ReplayReport report;
  for (const auto& r : records) {
    report.records++;
    const TaskSpec* task = FindTask(tasks, r.task_id);
    if (!task) {
      report.verdict_mismatches++;
      report.details.push_back(RecordKey(r) + ": task not in suite");
      continue;
    }
    DomainState replayed = ReplayToolCalls(task->initial_state, r.tool_calls);
    if (!(replayed == r.final_state)) {
      report.state_mismatches++;
      report.details.push_back(RecordKey(r) + ": replayed state differs from logged state");
    }
    const bool verdict = !r.errored && Verify(*task, task->initial_state, replayed);
    if (verdict != r.success) {
      report.verdict_mismatches++;
      report.details.push_back(RecordKey(r) + ": logged success=" +
                               (r.success ? "true" : "false") + ", replay says " +
                               (verdict ? "true" : "false"));
    }
  }
  return report;
}

SuiteValidation ValidateSuite(const RunConfig& config, std::span<const TaskSpec> tasks) {
  SuiteValidation v;
  v.tasks = tasks.size();
  std::set<std::string> ids;
  for (const auto& task : tasks) {
    if (!ids.insert(task.task_id).second) v.problems.push_back("duplicate task id " + task.task_id);
    if (auto p = CheckTaskInvariants(task); !p.empty()) {
      v.problems.push_back(task.task_id + ": " + p);
      continue;
    }
    for (double eps : config.epsilon_levels) {
      EpisodeJob job;
      job.task_id = task.task_id;
      job.epsilon = eps;
      job.profile = "baseline";
      job.agent_id = kOracleAgent;
      job.model_id = kOracleAgent;
      job.seed = DeriveEpisodeSeed(config.global_seed, task.task_id, eps, 0.0, kOracleAgent, 0);
      job.perturbation_seed = DerivePerturbationSeed(config.global_seed, task.task_id, eps);
      EpisodeRecord rec = RunEpisode(job, task, config, nullptr);
      if (!rec.success) {
        v.problems.push_back(task.task_id + ": oracle fails at epsilon " + Level(eps));
      }
    }
  }
  return v;
}

}  // namespace relsurf
