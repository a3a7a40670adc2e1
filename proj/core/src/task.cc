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

#include "relsurf/task.h"

#include "relsurf/errors.h"

namespace relsurf {

const GoalEntity* GoalMeta::Find(std::string_view role) const {
  for (const auto& e : entities) {
    if (e.role == role) return &e;
  }
  return nullptr;
}

const std::string& GoalMeta::Get(std::string_view role) const {
  const GoalEntity* e = Find(role);
  if (!e) throw ValidationError("goal has no '" + std::string(role) + "' entity");
  return e->value;
}

std::string_view ToString(Complexity c) { return c == Complexity::kL1 ? "L1" : "L2"; }

std::string_view ToString(EntityKind k) {
  switch (k) {
    case EntityKind::kDate: return "date";
    case EntityKind::kTime: return "time";
    case EntityKind::kName: return "name";
    case EntityKind::kId: return "id";
    case EntityKind::kCode: return "code";
    case EntityKind::kText: return "text";
    case EntityKind::kNumber: return "number";
  }
  return "?";
}

}  // namespace relsurf
