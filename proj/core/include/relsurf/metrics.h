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

#ifndef RELSURF_METRICS_H_
#define RELSURF_METRICS_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relsurf/records.h"

namespace relsurf {

// Unbiased pass^k estimate C(s,k)/C(n,k): the fraction of size-k trial
// subsets in which every trial succeeded. Throws std::invalid_argument
// unless 1 <= k <= n.
double EstimatePassK(int n, int successes, int k);
double EstimatePassK(std::span<const bool> outcomes, int k);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

// Wilson score interval; z defaults to the 95% quantile.
Interval WilsonInterval(double successes, double n, double z = 1.959963984540054);

struct GridAxes {
  std::vector<int> k_values;
  std::vector<double> epsilons;
  std::vector<double> lambdas;
};

struct GridPoint {
  int k = 1;
  double epsilon = 0.0;
  double lambda = 0.0;

  auto operator<=>(const GridPoint&) const = default;
};

struct SurfaceCell {
  double estimate = 0.0;
  std::size_t n_tasks = 0;
  std::size_t n_trials = 0;
  Interval ci;
  std::map<std::string, double> per_task;
};

struct ReliabilitySurface {
  GridAxes axes;
  std::map<GridPoint, SurfaceCell> cells;

  const SurfaceCell& At(const GridPoint& p) const;  // throws CoverageError
  double Value(int k, double epsilon, double lambda) const {
    return At({k, epsilon, lambda}).estimate;
  }
};

// Mean over tasks of the per-task pass^k at every grid point. Errored and
// ablation-profile episodes are skipped. Throws CoverageError naming every
// point that has no task with at least k trials.
ReliabilitySurface BuildSurface(std::span<const EpisodeRecord> records,
                                const GridAxes& axes);

// Surface with prescribed values, for synthetic studies.
ReliabilitySurface SurfaceFromFunction(
    const GridAxes& axes, const std::function<double(const GridPoint&)>& value);

// Trapezoid over the measured epsilon and lambda extents, mean over k,
// normalized by the extent product. A single-level axis contributes its value.
double SurfaceVolume(const ReliabilitySurface& surface);

enum class Axis { kK, kEpsilon, kLambda };

// dR per unit of the axis: central difference when both neighbours exist,
// one-sided otherwise. Throws std::invalid_argument on a single-level axis.
double DegradationGradient(const ReliabilitySurface& surface,
                           const GridPoint& point, Axis axis);

// First point below theta scanning lambda (outer), epsilon, then k (inner),
// each ascending.
std::optional<GridPoint> CriticalThreshold(const ReliabilitySurface& surface,
                                           double theta);

struct RecoveryStats {
  std::int64_t faults_encountered = 0;  // explicit-error faults only
  std::int64_t successful_recoveries = 0;
  std::optional<double> recovery_rate;
  std::optional<double> extra_tool_calls_per_fault;
};

RecoveryStats ComputeRecoveryStats(std::span<const EpisodeRecord> records);

struct AblationRow {
  std::string profile;
  std::size_t episodes = 0;
  std::size_t successes = 0;
  double pass_rate = 0.0;       // fraction
  double delta_vs_mixed = 0.0;  // fraction, signed
};

// Rows in the order timeout_only, rate_limit_only, partial_only, mixed.
// Throws CoverageError when a profile has no records.
std::vector<AblationRow> AblationReport(std::span<const EpisodeRecord> records);

struct CostRow {
  std::string model_id;
  std::size_t episodes = 0;
  std::int64_t tokens_in = 0;
  std::int64_t tokens_out = 0;
  double total_usd = 0.0;
  double usd_per_100_episodes = 0.0;
  double ratio_to_cheapest = 1.0;
};

std::vector<CostRow> AggregateCost(std::span<const EpisodeRecord> records);

// pass@1 over non-errored episodes.
double PassAt1(std::span<const EpisodeRecord> records);

}  // namespace relsurf

#endif  // RELSURF_METRICS_H_
