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

#ifndef RELSURF_TASK_H_
#define RELSURF_TASK_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relsurf/domain_state.h"

namespace relsurf {

enum class Complexity { kL1, kL2 };

// How an entity may be rewritten by a perturbation. Dates may change surface
// form (ISO, "Jan 1, 2026", "tomorrow"); everything else must survive
// verbatim.
enum class EntityKind { kDate, kTime, kName, kId, kCode, kText, kNumber };

struct GoalEntity {
  std::string role;  // "date", "time", "passenger", "sku", ...
  EntityKind kind = EntityKind::kText;
  std::string value;

  bool operator==(const GoalEntity&) const = default;
};

// Structured form of the task goal. Oracle agents and perturbation safety
// checks read this instead of the description text.
struct GoalMeta {
  std::string kind;  // task template; also the verifier id
  std::vector<GoalEntity> entities;

  const GoalEntity* Find(std::string_view role) const;
  // Value of the entity with this role; throws ValidationError if absent.
  const std::string& Get(std::string_view role) const;
  bool Has(std::string_view role) const { return Find(role) != nullptr; }

  bool operator==(const GoalMeta&) const = default;
};

struct TaskSpec {
  std::string task_id;
  Domain domain = Domain::kScheduling;
  std::string description;
  Complexity complexity = Complexity::kL1;
  DomainState initial_state;
  std::vector<std::string> tool_set;
  std::string verifier_id;
  std::map<std::string, std::string> verifier_params;
  GoalMeta goal_meta;

  bool operator==(const TaskSpec&) const = default;
};

std::string_view ToString(Complexity c);
std::string_view ToString(EntityKind k);

}  // namespace relsurf

#endif  // RELSURF_TASK_H_
