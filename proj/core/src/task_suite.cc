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

#include <algorithm>

#include "domains_internal.h"
#include "relsurf/calendar.h"
#include "relsurf/result_text.h"

namespace relsurf {

std::vector<TaskSpec> GenerateTaskSuite(Domain domain, std::uint64_t seed) {
  // One substream per domain so suites do not shift when another changes.
  Rng rng(seed ^ SplitMix64(0x7461736bULL + static_cast<std::uint64_t>(domain)),
          RngStream::kTaskSuite);
  std::vector<TaskSpec> tasks;
  switch (domain) {
    case Domain::kScheduling: tasks = internal::SchedulingSuite(rng); break;
    case Domain::kTravel: tasks = internal::TravelSuite(rng); break;
    case Domain::kSupport: tasks = internal::SupportSuite(rng); break;
    case Domain::kEcommerce: tasks = internal::EcommerceSuite(rng); break;
  }
  for (auto& t : tasks) {
    t.tool_set.clear();
    for (const auto& spec : ToolCatalog(domain)) t.tool_set.push_back(spec.name);
  }
  return tasks;
}

std::vector<TaskSpec> GenerateFullSuite(std::uint64_t seed) {
  std::vector<TaskSpec> all;
  for (Domain d : {Domain::kScheduling, Domain::kTravel, Domain::kSupport,
                   Domain::kEcommerce}) {
    auto part = GenerateTaskSuite(d, seed);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

const TaskSpec* FindTask(std::span<const TaskSpec> tasks, std::string_view task_id) {
  for (const auto& t : tasks) {
    if (t.task_id == task_id) return &t;
  }
  return nullptr;
}

bool GoalEntitiesVisible(const GoalMeta& goal, std::string_view text) {
  std::vector<DateMention> dates;
  bool dates_scanned = false;
  for (const auto& e : goal.entities) {
    if (e.kind == EntityKind::kDate) {
      if (!dates_scanned) {
        dates = FindDateMentions(text);
        dates_scanned = true;
      }
      if (std::none_of(dates.begin(), dates.end(),
                       [&](const DateMention& m) { return m.iso == e.value; })) {
        return false;
      }
    } else if (text.find(e.value) == std::string_view::npos) {
      return false;
    }
  }
  return true;
}

std::string CheckTaskInvariants(const TaskSpec& task) {
  if (task.task_id.empty()) return "empty task id";
  if (DomainOf(task.initial_state) != task.domain) return "initial state has wrong domain";
  if (auto p = CheckStateInvariants(task.initial_state); !p.empty()) return p;
  const VerifierSpec* v = FindVerifier(task.verifier_id);
  if (!v) return "unknown verifier " + task.verifier_id;
  if (v->domain != task.domain) return "verifier domain mismatch";
  for (auto key : v->required_params) {
    if (!task.verifier_params.count(std::string(key))) {
      return "missing verifier parameter " + std::string(key);
    }
  }
  if (task.goal_meta.kind != task.verifier_id) return "goal kind differs from verifier";
  for (const auto& name : task.tool_set) {
    if (!FindTool(task.domain, name)) return "unknown tool " + name;
  }
  if (!GoalEntitiesVisible(task.goal_meta, task.description)) {
    return "goal entity missing from description";
  }
  return {};
}

}  // namespace relsurf
