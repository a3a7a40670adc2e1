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

#ifndef RELSURF_DOMAINS_H_
#define RELSURF_DOMAINS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "relsurf/domain_state.h"
#include "relsurf/records.h"
#include "relsurf/task.h"

namespace relsurf {

// --- tool catalog ----------------------------------------------------------

enum class ParamType { kStr, kFloat, kDictList, kStrList };

std::string_view ToString(ParamType t);

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::kStr;
  bool required = true;
};

struct ToolSpec {
  std::string name;
  Domain domain = Domain::kScheduling;
  std::string description;
  std::vector<ParamSpec> params;
  bool read_only = false;
};

const std::vector<ToolSpec>& ToolCatalog(Domain domain);
const ToolSpec* FindTool(Domain domain, std::string_view name);

// Reason the arguments do not fit the signature, or nullopt when they do.
std::optional<std::string> ValidateArgs(const ToolSpec& spec, const ToolArgs& args);

// Machine-readable catalog: name, description, parameters.
nlohmann::json CatalogToJson(Domain domain);

// --- transitions -----------------------------------------------------------

// Executes one tool against the state in place and returns the result line.
// Total: any arguments produce a result; failures are in-band "error: ..."
// text and leave the state untouched.
std::string ApplyTool(DomainState& state, std::string_view tool,
                      const ToolArgs& args);

struct ToolOutput {
  DomainState state;
  std::string text;
};

inline ToolOutput RunTool(const DomainState& state, std::string_view tool,
                          const ToolArgs& args) {
  ToolOutput out{state, {}};
  out.text = ApplyTool(out.state, tool, args);
  return out;
}

// --- verification ----------------------------------------------------------

using VerifierParams = std::map<std::string, std::string>;
using VerifierFn = bool (*)(const DomainState& initial, const DomainState& final,
                            const VerifierParams& params);

struct VerifierSpec {
  std::string_view id;
  Domain domain;
  VerifierFn fn;
  std::vector<std::string_view> required_params;
  // Tools the goal cannot be reached without.
  std::vector<std::string_view> critical_tools;
};

std::span<const VerifierSpec> VerifierRegistry();
const VerifierSpec* FindVerifier(std::string_view id);

// Pure state-based goal check. Throws ConfigError for an unknown verifier
// or missing parameters.
bool Verify(const TaskSpec& task, const DomainState& initial,
            const DomainState& final);

// --- task suites -----------------------------------------------------------

inline constexpr int kTasksPerDomain = 5;

// Five tasks per domain, three L1 and two L2, deterministic under seed.
std::vector<TaskSpec> GenerateTaskSuite(Domain domain, std::uint64_t seed);

// All four domains, 20 tasks.
std::vector<TaskSpec> GenerateFullSuite(std::uint64_t seed);

const TaskSpec* FindTask(std::span<const TaskSpec> tasks, std::string_view task_id);

// Empty when the task is well formed: known verifier for the domain, every
// tool registered, every goal entity visible in the description.
std::string CheckTaskInvariants(const TaskSpec& task);

// True when every goal entity is recoverable from the text (dates in any
// supported surface form).
bool GoalEntitiesVisible(const GoalMeta& goal, std::string_view text);

}  // namespace relsurf

#endif  // RELSURF_DOMAINS_H_
