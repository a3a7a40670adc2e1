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

#include "relsurf/metrics.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

#include "relsurf/config.h"
#include "relsurf/errors.h"

namespace relsurf {

double EstimatePassK(int n, int successes, int k) {
  if (k < 1 || k > n) {
    throw std::invalid_argument("pass^k needs 1 <= k <= n (k=" + std::to_string(k) +
                                ", n=" + std::to_string(n) + ")");
  }
  if (successes < 0 || successes > n) {
    throw std::invalid_argument("successes out of range");
  }
  if (successes < k) return 0.0;
  double p = 1.0;
  for (int i = 0; i < k; ++i) {
    p *= static_cast<double>(successes - i) / static_cast<double>(n - i);
  }
  return p;
}

double EstimatePassK(std::span<const bool> outcomes, int k) {
  const int s = static_cast<int>(std::count(outcomes.begin(), outcomes.end(), true));
  return EstimatePassK(static_cast<int>(outcomes.size()), s, k);
}

Interval WilsonInterval(double successes, double n, double z) {
  if (n <= 0) return {0.0, 1.0};
  const double p = successes / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// --- surface ------------------------------------------------------------------

namespace {

constexpr double kLevelTolerance = 1e-9;

std::optional<std::size_t> LevelIndex(const std::vector<double>& levels, double v) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (std::abs(levels[i] - v) < kLevelTolerance) return i;
  }
  return std::nullopt;
}

std::string PointName(const GridPoint& p) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "(k=%d, eps=%g, lambda=%g)", p.k, p.epsilon, p.lambda);
  return buf;
}

void CheckAxes(const GridAxes& axes) {
  if (axes.k_values.empty() || axes.epsilons.empty() || axes.lambdas.empty()) {
    throw std::invalid_argument("grid axes must be non-empty");
  }
}

// Trapezoid mean of y over x; a single sample is its own mean.
double TrapezoidMean(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() == 1) return y[0];
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    area += (x[i + 1] - x[i]) * (y[i] + y[i + 1]) / 2.0;
  }
  return area / (x.back() - x.front());
}

}  // namespace

const SurfaceCell& ReliabilitySurface::At(const GridPoint& p) const {
  for (const auto& [point, cell] : cells) {
    if (point.k == p.k && std::abs(point.epsilon - p.epsilon) < kLevelTolerance &&
        std::abs(point.lambda - p.lambda) < kLevelTolerance) {
      return cell;
    }
  }
  throw CoverageError("surface has no value at " + PointName(p));
}

ReliabilitySurface BuildSurface(std::span<const EpisodeRecord> records, const GridAxes& axes) {
  CheckAxes(axes);
  // (eps index, lambda index) -> task -> outcomes
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::string, std::vector<bool>>> groups;
  for (const auto& r : records) {
    if (r.errored || ParseAblationProfile(r.profile)) continue;
    auto e = LevelIndex(axes.epsilons, r.epsilon);
    auto l = LevelIndex(axes.lambdas, r.lambda_level);
    if (!e || !l) continue;
    groups[{*e, *l}][r.task_id].push_back(r.success);
  }

  ReliabilitySurface surface;
  surface.axes = axes;
  std::vector<std::string> missing;
  for (std::size_t li = 0; li < axes.lambdas.size(); ++li) {
    for (std::size_t ei = 0; ei < axes.epsilons.size(); ++ei) {
      for (int k : axes.k_values) {
        GridPoint point{k, axes.epsilons[ei], axes.lambdas[li]};
        SurfaceCell cell;
        double sum = 0.0;
        if (auto g = groups.find({ei, li}); g != groups.end()) {
          for (const auto& [task, outcomes] : g->second) {
            if (static_cast<int>(outcomes.size()) < k) continue;
            const int wins = static_cast<int>(std::count(outcomes.begin(), outcomes.end(), true));
            const double v = EstimatePassK(static_cast<int>(outcomes.size()), wins, k);
            cell.per_task[task] = v;
            sum += v;
            cell.n_trials += outcomes.size();
          }
        }
        cell.n_tasks = cell.per_task.size();
        if (cell.n_tasks == 0) {
          missing.push_back(PointName(point));
          continue;
        }
        cell.estimate = sum / static_cast<double>(cell.n_tasks);
        cell.ci = WilsonInterval(cell.estimate * static_cast<double>(cell.n_tasks),
                                 static_cast<double>(cell.n_tasks));
        surface.cells.emplace(point, std::move(cell));
      }
    }
  }
  if (!missing.empty()) {
    std::string msg = "no coverage at";
    for (const auto& m : missing) msg += " " + m;
    throw CoverageError(msg);
  }
  return surface;
}

ReliabilitySurface SurfaceFromFunction(const GridAxes& axes,
                                       const std::function<double(const GridPoint&)>& value) {
  CheckAxes(axes);
  ReliabilitySurface surface;
  surface.axes = axes;
  for (int k : axes.k_values) {
    for (double e : axes.epsilons) {
      for (double l : axes.lambdas) {
        GridPoint p{k, e, l};
        SurfaceCell cell;
        cell.estimate = value(p);
        cell.ci = {cell.estimate, cell.estimate};
        surface.cells.emplace(p, std::move(cell));
      }
    }
  }
  return surface;
}

double SurfaceVolume(const ReliabilitySurface& surface) {
  const GridAxes& axes = surface.axes;
  if (surface.cells.empty()) throw CoverageError("empty surface");
  CheckAxes(axes);
  double total = 0.0;
  for (int k : axes.k_values) {
    std::vector<double> per_eps;
    for (double e : axes.epsilons) {
      std::vector<double> ys;
      for (double l : axes.lambdas) ys.push_back(surface.Value(k, e, l));
      per_eps.push_back(TrapezoidMean(axes.lambdas, ys));
    }
    total += TrapezoidMean(axes.epsilons, per_eps);
  }
  return total / static_cast<double>(axes.k_values.size());
}

double DegradationGradient(const ReliabilitySurface& surface, const GridPoint& point, Axis axis) {
  const GridAxes& axes = surface.axes;
  std::vector<double> xs;
  switch (axis) {
    case Axis::kK:
      for (int k : axes.k_values) xs.push_back(k);
      break;
    case Axis::kEpsilon: xs = axes.epsilons; break;
    case Axis::kLambda: xs = axes.lambdas; break;
  }
  if (xs.size() < 2) throw std::invalid_argument("gradient needs at least two levels on the axis");
  const double here = axis == Axis::kK ? point.k
                      : axis == Axis::kEpsilon ? point.epsilon
                                               : point.lambda;
  auto idx = LevelIndex(xs, here);
  if (!idx) throw std::invalid_argument("point is not on the grid: " + PointName(point));
  auto at = [&](std::size_t i) {
    GridPoint p = point;
    switch (axis) {
      case Axis::kK: p.k = static_cast<int>(xs[i]); break;
      case Axis::kEpsilon: p.epsilon = xs[i]; break;
      case Axis::kLambda: p.lambda = xs[i]; break;
    }
    return surface.At(p).estimate;
  };
  const std::size_t lo = *idx == 0 ? 0 : *idx - 1;
  const std::size_t hi = *idx + 1 == xs.size() ? *idx : *idx + 1;
  return (at(hi) - at(lo)) / (xs[hi] - xs[lo]);
}

std::optional<GridPoint> CriticalThreshold(const ReliabilitySurface& surface, double theta) {
  const GridAxes& axes = surface.axes;
  std::vector<double> lambdas = axes.lambdas, epsilons = axes.epsilons;
  std::vector<int> ks = axes.k_values;
  std::sort(lambdas.begin(), lambdas.end());
  std::sort(epsilons.begin(), epsilons.end());
  std::sort(ks.begin(), ks.end());
  for (double l : lambdas) {
    for (double e : epsilons) {
      for (int k : ks) {
        if (surface.Value(k, e, l) < theta) return GridPoint{k, e, l};
      }
    }
  }
  return std::nullopt;
}

// --- recovery -----------------------------------------------------------------

RecoveryStats ComputeRecoveryStats(std::span<const EpisodeRecord> records) {
  RecoveryStats stats;
  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::vector<double>> clean_calls;
  for (const auto& r : records) {
    for (const auto& ev : r.fault_events) {
      if (!ev.was_explicit) continue;
      stats.faults_encountered++;
      if (ev.recovered) stats.successful_recoveries++;
    }
    if (r.fault_events.empty() && !r.errored) {
      clean_calls[{r.task_id, r.agent_id, r.model_id}].push_back(
          static_cast<double>(r.tool_calls.size()));
    }
  }
  if (stats.faults_encountered > 0) {
    stats.recovery_rate = static_cast<double>(stats.successful_recoveries) /
                          static_cast<double>(stats.faults_encountered);
  }
  std::map<Key, double> medians;
  for (auto& [key, calls] : clean_calls) {
    std::sort(calls.begin(), calls.end());
    const std::size_t n = calls.size();
    medians[key] = n % 2 ? calls[n / 2] : (calls[n / 2 - 1] + calls[n / 2]) / 2.0;
  }
  double extra = 0.0;
  std::size_t counted = 0;
  for (const auto& r : records) {
    if (r.errored) continue;
    const bool faulted = std::any_of(r.fault_events.begin(), r.fault_events.end(),
                                     [](const FaultEvent& e) { return e.was_explicit; });
    if (!faulted) continue;
    auto m = medians.find({r.task_id, r.agent_id, r.model_id});
    if (m == medians.end()) continue;
    extra += static_cast<double>(r.tool_calls.size()) - m->second;
    counted++;
  }
  if (counted > 0) stats.extra_tool_calls_per_fault = extra / static_cast<double>(counted);
  return stats;
}

// --- ablation -------------------------------------------------------------------

std::vector<AblationRow> AblationReport(std::span<const EpisodeRecord> records) {
  const AblationProfile order[] = {AblationProfile::kTimeoutOnly, AblationProfile::kRateLimitOnly,
                                   AblationProfile::kPartialOnly, AblationProfile::kMixed};
  std::vector<AblationRow> rows;
  std::vector<std::string> missing;
  for (auto p : order) {
    AblationRow row;
    row.profile = std::string(ToString(p));
    for (const auto& r : records) {
      if (r.errored || r.profile != row.profile) continue;
      row.episodes++;
      if (r.success) row.successes++;
    }
    if (row.episodes == 0) missing.push_back(row.profile);
    row.pass_rate = row.episodes ? static_cast<double>(row.successes) /
                                       static_cast<double>(row.episodes)
                                 : 0.0;
    rows.push_back(std::move(row));
  }
  if (!missing.empty()) {
    std::string msg = "ablation profiles without records:";
    for (const auto& m : missing) msg += " " + m;
    throw CoverageError(msg);
  }
  const double mixed = rows.back().pass_rate;
  for (auto& row : rows) row.delta_vs_mixed = row.pass_rate - mixed;
  return rows;
}

// --- cost -----------------------------------------------------------------------

std::vector<CostRow> AggregateCost(std::span<const EpisodeRecord> records) {
  std::map<std::string, CostRow> by_model;
  for (const auto& r : records) {
    CostRow& row = by_model[r.model_id];
    row.model_id = r.model_id;
    row.episodes++;
    row.tokens_in += r.tokens_in;
    row.tokens_out += r.tokens_out;
    row.total_usd += r.cost_usd;
  }
  std::vector<CostRow> rows;
  double cheapest = 0.0;
  for (auto& [model, row] : by_model) {
    row.usd_per_100_episodes = row.total_usd * 100.0 / static_cast<double>(row.episodes);
    if (row.usd_per_100_episodes > 0 &&
        (cheapest == 0.0 || row.usd_per_100_episodes < cheapest)) {
      cheapest = row.usd_per_100_episodes;
    }
    rows.push_back(row);
  }
  for (auto& row : rows) {
    row.ratio_to_cheapest = cheapest > 0 ? row.usd_per_100_episodes / cheapest : 1.0;
  }
  return rows;
}

double PassAt1(std::span<const EpisodeRecord> records) {
  std::size_t n = 0, s = 0;
  for (const auto& r : records) {
    if (r.errored) continue;
    n++;
    if (r.success) s++;
  }
  return n ? static_cast<double>(s) / static_cast<double>(n) : 0.0;
}

}  // namespace relsurf
