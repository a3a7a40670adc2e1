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

#ifndef RELSURF_RECORDS_H_
#define RELSURF_RECORDS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relsurf/domain_state.h"
#include "relsurf/ids.h"

namespace relsurf {

// Tool arguments as decoded from the model's JSON function call.
using ToolArgs = nlohmann::json;

struct ToolCallRecord {
  std::size_t index = 0;
  std::string tool_name;
  ToolArgs args = ToolArgs::object();
  std::string result_text;
  std::optional<FaultId> fault_annotation;
  bool is_explicit_fault = false;

  bool operator==(const ToolCallRecord&) const = default;
};

struct FaultEvent {
  std::size_t tool_call_index = 0;
  FaultId fault_id = FaultId::kTransientTimeout;
  bool was_explicit = false;
  bool recovered = false;

  bool operator==(const FaultEvent&) const = default;
};

struct Turn {
  std::string role;  // system, user, assistant, tool
  std::string content;

  bool operator==(const Turn&) const = default;
};

struct AppliedMr {
  MrId mr_id = MrId::kSynonym;
  double weight = 0.0;
  bool applied = false;  // false when the relation found no site in the text

  bool operator==(const AppliedMr&) const = default;
};

inline constexpr int kSchemaVersion = 1;

struct EpisodeRecord {
  std::string task_id;
  double epsilon = 0.0;
  double lambda_level = 0.0;
  std::string profile;  // fault profile name (baseline, medium, timeout_only...)
  std::uint32_t trial_index = 0;
  std::string agent_id;
  std::string model_id;
  std::uint64_t seed = 0;
  std::string perturbed_description;
  std::vector<AppliedMr> applied_mrs;
  std::vector<Turn> transcript;
  std::vector<ToolCallRecord> tool_calls;
  std::vector<FaultEvent> fault_events;
  bool success = false;
  bool errored = false;  // model transport failure; excluded from pass rates
  std::string error_message;
  DomainState final_state;
  std::int64_t tokens_in = 0;
  std::int64_t tokens_out = 0;
  std::int64_t wall_ms = 0;
  double cost_usd = 0.0;

  bool operator==(const EpisodeRecord&) const = default;
};

// Empty string when valid, else the first violated invariant.
std::string CheckRecordInvariants(const EpisodeRecord& record);

nlohmann::json RecordToJson(const EpisodeRecord& record);
EpisodeRecord RecordFromJson(const nlohmann::json& j);  // throws ValidationError

}  // namespace relsurf

#endif  // RELSURF_RECORDS_H_
