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

// relsurf: plan, run, replay and report reliability-surface experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "relsurf/agents.h"
#include "relsurf/config.h"
#include "relsurf/domains.h"
#include "relsurf/episode_log.h"
#include "relsurf/errors.h"
#include "relsurf/metrics.h"
#include "relsurf/report.h"
#include "relsurf/runner.h"

namespace relsurf {
namespace {

struct CommonFlags {
  std::string config_path;
  std::string out;
  std::optional<std::uint64_t> seed;
  int parallel = 1;
  std::vector<std::string> agents;
  std::string model;
  bool stub = false;
};

RunConfig LoadConfig(const CommonFlags& f) {
  RunConfig c = f.config_path.empty() ? RunConfig{} : LoadRunConfig(f.config_path);
  if (f.seed) c.global_seed = *f.seed;
  if (!f.agents.empty()) c.agent_ids = f.agents;
  if (!f.model.empty()) c.model_id = f.model;
  ValidateRunConfig(c);
  return c;
}

ModelFactory MakeFactory(const RunConfig& config, bool stub) {
  if (stub) return StubModelFactory(config.stub_slip_rate);
  // One client for the whole run so that retries and spacing are shared.
  auto backend = std::make_shared<RetryingModelClient>(
      std::make_shared<HttpModelClient>(HttpBackendFromEnv(config.model_id)));
  return [backend](const EpisodeJob&, const TaskSpec&) -> std::shared_ptr<ModelClient> {
    return backend;
  };
}

int RunGrid(const CommonFlags& f, PlanMode mode) {
  if (f.out.empty()) throw ConfigError("--out is required");
  const RunConfig config = LoadConfig(f);
  const auto tasks = GenerateFullSuite(SuiteSeed(config));
  const ExperimentPlan plan = PlanExperiment(config, tasks, mode);
  ExecuteOptions opts;
  opts.parallelism = f.parallel;
  opts.log_path = f.out;
  opts.model_factory = MakeFactory(config, f.stub);
  std::fprintf(stderr, "planned %zu episodes (%zu tasks x %zu eps x %zu %s x %zu agents x %zu)\n",
               plan.jobs.size(), plan.num_tasks, plan.num_epsilons, plan.num_lambdas,
               mode == PlanMode::kMain ? "lambda" : "profiles", plan.num_agents, plan.k_trials);
  const ExecuteSummary s = ExecutePlan(plan, tasks, config, opts);
  std::printf("planned=%zu skipped=%zu executed=%zu errored=%zu%s\n", s.planned, s.skipped,
              s.executed, s.errored, s.aborted ? " aborted" : "");
  return s.aborted ? 2 : 0;
}

int Validate(const CommonFlags& f) {
  const RunConfig config = LoadConfig(f);
  const auto tasks = GenerateFullSuite(SuiteSeed(config));
  const SuiteValidation v = ValidateSuite(config, tasks);
  for (const auto& p : v.problems) std::printf("problem: %s\n", p.c_str());
  std::printf("%zu tasks, %zu episodes per model, %s\n", v.tasks,
              ExpectedEpisodeCount(config, v.tasks), v.ok() ? "suite ok" : "suite has problems");
  return v.ok() ? 0 : 1;
}

int Replay(const std::string& log_path, const CommonFlags& f) {
  const RunConfig config = LoadConfig(f);
  const auto tasks = GenerateFullSuite(SuiteSeed(config));
  const auto records = ReadEpisodeLog(log_path);
  const ReplayReport r = ReplayRecords(records, tasks);
  for (const auto& d : r.details) std::printf("mismatch: %s\n", d.c_str());
  std::printf("records=%zu verdict_mismatches=%zu state_mismatches=%zu\n", r.records,
              r.verdict_mismatches, r.state_mismatches);
  return r.verdict_mismatches + r.state_mismatches == 0 ? 0 : 1;
}

std::vector<EpisodeRecord> ForAgent(const std::vector<EpisodeRecord>& recs,
                                    const std::string& agent) {
  std::vector<EpisodeRecord> out;
  for (const auto& r : recs) {
    if (r.agent_id == agent) out.push_back(r);
  }
  return out;
}

std::vector<std::string> AgentsIn(const std::vector<EpisodeRecord>& recs) {
  std::set<std::string> ids;
  for (const auto& r : recs) ids.insert(r.agent_id);
  return {ids.begin(), ids.end()};
}

GridAxes AxesFor(const RunConfig& config) {
  GridAxes axes;
  for (int k = 1; k <= config.k_trials; ++k) axes.k_values.push_back(k);
  axes.epsilons = config.epsilon_levels;
  axes.lambdas = config.lambda_levels;
  return axes;
}

int Report(const std::string& log_path, const std::string& metric, const std::string& format_name,
           const std::string& plot_path, const CommonFlags& f) {
  const RunConfig config = LoadConfig(f);
  const TableFormat format = format_name == "csv" ? TableFormat::kCsv : TableFormat::kMarkdown;
  const auto records = ReadEpisodeLog(log_path);
  const GridAxes axes = AxesFor(config);
  const int k = config.k_trials;
  std::vector<PlotPoint> plot;

  if (metric == "surface") {
    const auto surface = BuildSurface(records, axes);
    std::cout << SurfaceTable(surface, format);
    for (const auto& [p, cell] : surface.cells) {
      if (p.k == k) {
        plot.push_back({"eps=" + std::to_string(p.epsilon).substr(0, 3), p.lambda, cell.estimate});
      }
    }
  } else if (metric == "volume") {
    std::vector<VolumeRow> rows;
    for (const auto& agent : AgentsIn(records)) {
      const auto s = BuildSurface(ForAgent(records, agent), axes);
      const double l0 = axes.lambdas.front();
      rows.push_back({agent, SurfaceVolume(s), s.Value(k, axes.epsilons.front(), l0),
                      s.Value(k, axes.epsilons.back(), l0)});
    }
    std::cout << VolumeTable(rows, format);
  } else if (metric == "gradient") {
    std::vector<GradientRow> rows;
    for (const auto& agent : AgentsIn(records)) {
      const auto s = BuildSurface(ForAgent(records, agent), axes);
      for (const auto& [p, cell] : s.cells) {
        if (p.k != k) continue;
        if (axes.lambdas.size() > 1 && p.lambda == axes.lambdas.front()) {
          rows.push_back({agent, p, Axis::kLambda, DegradationGradient(s, p, Axis::kLambda)});
        }
        if (axes.epsilons.size() > 1 && p.epsilon == axes.epsilons.front()) {
          rows.push_back({agent, p, Axis::kEpsilon, DegradationGradient(s, p, Axis::kEpsilon)});
        }
        if (p.epsilon == axes.epsilons.front()) plot.push_back({agent, p.lambda, cell.estimate});
      }
    }
    std::cout << GradientTable(rows, format);
  } else if (metric == "threshold") {
    std::vector<std::string> series = AgentsIn(records);
    series.insert(series.begin(), "all");
    for (const auto& name : series) {
      const auto s = BuildSurface(name == "all" ? records : ForAgent(records, name), axes);
      const auto p = CriticalThreshold(s, config.theta);
      if (p) {
        std::printf("%s: R drops below %.2f at k=%d eps=%g lambda=%g (R=%.4f)\n", name.c_str(),
                    config.theta, p->k, p->epsilon, p->lambda, s.At(*p).estimate);
      } else {
        std::printf("%s: R stays at or above %.2f on the measured grid\n", name.c_str(),
                    config.theta);
      }
    }
  } else if (metric == "recovery") {
    std::vector<std::pair<std::string, RecoveryStats>> rows;
    for (const auto& agent : AgentsIn(records)) {
      rows.push_back({agent, ComputeRecoveryStats(ForAgent(records, agent))});
    }
    std::cout << RecoveryTable(rows, format);
  } else if (metric == "ablation") {
    const auto rows = AblationReport(records);
    std::cout << AblationTable(rows, format);
    for (const auto& r : rows) plot.push_back({r.profile, 0.2, r.pass_rate});
  } else if (metric == "cost") {
    std::cout << CostTable(AggregateCost(records), format);
  } else {
    throw ConfigError("unknown metric '" + metric + "'");
  }
  if (!plot_path.empty()) {
    if (plot.empty()) throw ConfigError("metric '" + metric + "' has no plot data");
    WritePlotData(plot_path, plot);
  }
  return 0;
}

}  // namespace
}  // namespace relsurf

int main(int argc, char** argv) {
  using namespace relsurf;
  CLI::App app{"Reliability-surface harness for tool-calling agents"};
  app.require_subcommand(1);
  CommonFlags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "Run configuration (JSON)")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", flags.seed, "Override global_seed");
    sub->add_option("--agent", flags.agents, "Restrict to these agents (react, reflexion, oracle)");
    sub->add_option("--model", flags.model, "Override model_id");
  };

  auto* validate = app.add_subcommand("validate", "Check the config and that every task is solvable");
  add_common(validate);

  auto add_run = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--out", flags.out, "Episode log (JSONL); existing records are kept")->required();
    sub->add_option("--parallel", flags.parallel, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--stub", flags.stub, "Use the offline planned model instead of a live backend");
  };
  auto* run = app.add_subcommand("run", "Run the main grid");
  add_run(run);
  auto* ablation = app.add_subcommand("ablation", "Run the fault-type ablation grid");
  add_run(ablation);

  std::string log_path, metric = "surface", format = "md", plot;
  auto* report = app.add_subcommand("report", "Compute metrics from an episode log");
  add_common(report);
  report->add_option("--log", log_path, "Episode log")->required()->check(CLI::ExistingFile);
  report->add_option("--metric", metric, "Metric to emit")
      ->check(CLI::IsMember(
          {"surface", "volume", "gradient", "threshold", "recovery", "ablation", "cost"}));
  report->add_option("--format", format, "Table format")->check(CLI::IsMember({"md", "csv"}));
  report->add_option("--out", plot, "Also write plot data (CSV series,x,y) here");

  auto* replay = app.add_subcommand("replay", "Recompute verdicts from logged tool calls");
  add_common(replay);
  replay->add_option("--log", log_path, "Episode log")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*validate) return Validate(flags);
    if (*run) return RunGrid(flags, PlanMode::kMain);
    if (*ablation) return RunGrid(flags, PlanMode::kAblation);
    if (*report) return Report(log_path, metric, format, plot, flags);
    if (*replay) return Replay(log_path, flags);
  } catch (const ClientError& e) {
    std::fprintf(stderr, "backend error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
