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

#ifndef RELSURF_CHAOS_H_
#define RELSURF_CHAOS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "relsurf/config.h"
#include "relsurf/domain_state.h"
#include "relsurf/domains.h"
#include "relsurf/ids.h"
#include "relsurf/records.h"
#include "relsurf/rng.h"
#include "relsurf/task.h"

namespace relsurf {

enum class FaultKind { kExplicitError, kModifiedResponse };

struct FaultType {
  FaultId id;
  bool recoverable;
  FaultKind kind;
};

// empty_response_explicit selects how EmptyResponse is classified: as an
// explicit error (state untouched) or as a modified response (transition
// runs, body comes back empty).
FaultType DescribeFault(FaultId id, bool empty_response_explicit = true);

// Simulated latency charged to every tool call, and the extra time charged
// by the latency-bearing faults.
inline constexpr std::int64_t kBaseToolLatencyMs = 20;
inline constexpr std::int64_t kTimeoutLatencyMs = 30000;
inline constexpr std::int64_t kHighLatencyMs = 2500;

// Keys renamed by SchemaDrift, applied to every key=value field.
const std::map<std::string, std::string, std::less<>>& SchemaDriftMap();

inline constexpr std::string_view kTruncationMarker = "...[truncated]";

struct FaultProfile {
  std::string name;  // baseline, light, medium, heavy, timeout_only, ...
  double lambda_level = 0.0;
  double failure_rate = 0.0;
  // Canonical FaultId order; the order fixes how a uniform draw maps to a
  // fault, so it is part of the reproducibility contract.
  std::vector<std::pair<FaultId, double>> fault_weights;

  bool operator==(const FaultProfile&) const = default;
};

// Presets for lambda in {0, 0.1, 0.2, 0.3}; throws ConfigError otherwise.
FaultProfile BuildProfile(double lambda_level);
// Single-fault ablation profiles at the medium rate; kMixed is the medium
// preset itself.
FaultProfile BuildProfile(AblationProfile ablation);
// Resolves a profile by name ("medium", "timeout_only", ...).
FaultProfile BuildProfileByName(std::string_view name);

std::string CheckProfileInvariants(const FaultProfile& profile);

// {"failure_rate": r, "fault_weights": {"TransientTimeout": w, ...}}
FaultProfile ProfileFromJson(const nlohmann::json& j, std::string name,
                             double lambda_level);
nlohmann::json ProfileToJson(const FaultProfile& profile);

// Consumes exactly two draws. No fault with probability 1 - rate, otherwise
// a fault drawn with the profile weights.
std::optional<FaultId> SelectFault(const FaultProfile& profile, Rng& rng);
std::optional<FaultId> SelectFault(const FaultProfile& profile, double rate,
                                   double u_fire, double u_pick);

// Fires fault on the n-th (0-based) call to tool; an empty tool name counts
// every call.
struct ForcedFault {
  std::string tool;
  std::size_t occurrence = 0;
  FaultId fault = FaultId::kTransientTimeout;
};

// Per-episode injector memory.
struct EpisodeFaultContext {
  explicit EpisodeFaultContext(DomainState start) : snapshot(std::move(start)) {}

  DomainState snapshot;                  // served by StaleData
  std::set<std::string> retry_cooldown;  // (tool,args) keys exempt once
  std::map<std::string, int, std::less<>> soft_limited_until;  // tool -> turn
  std::set<std::string, std::less<>> hard_limited;
  std::set<std::string, std::less<>> drifted;
  std::set<std::string> stale_keys;
  int cascade_remaining = 0;
  int turn = 0;
  std::int64_t simulated_ms = 0;
  std::size_t call_index = 0;
  std::vector<std::string> call_tools;  // tool name by call index
  std::map<std::string, std::size_t, std::less<>> calls_per_tool;
  std::vector<ForcedFault> forced;
  std::vector<FaultEvent> events;
  bool empty_response_explicit = true;
};

struct FaultedCall {
  std::string result_text;
  std::optional<FaultId> fault;  // annotation for the ToolCallRecord
  bool is_explicit = false;
  std::optional<FaultEvent> event;
};

// Fault-injected execution of one tool call; the state is mutated in place
// unless an explicit-error fault fires.
FaultedCall ExecuteWithFaults(std::string_view tool, const ToolArgs& args,
                              DomainState& state, const FaultProfile& profile,
                              EpisodeFaultContext& ctx, Rng& rng);

struct SessionOptions {
  bool empty_response_explicit = true;
  std::vector<ForcedFault> forced;
};

// The episode's view of its domain: owns the world state, validates tool
// arguments against the task's tool set, and routes every call through the
// fault injector.
class DomainSession {
 public:
  DomainSession(const TaskSpec& task, FaultProfile profile,
                std::uint64_t episode_seed, SessionOptions options = {});

  struct CallOutcome {
    bool executed = false;  // false: rejected before reaching the tool
    std::string observation;
    std::optional<FaultId> fault;
    bool explicit_fault = false;
  };

  CallOutcome Call(std::string_view tool, const ToolArgs& args);

  // Agent loops call this once per model turn.
  void BeginTurn() { ctx_.turn++; }
  int turn() const { return ctx_.turn; }

  Domain domain() const { return domain_; }
  const DomainState& state() const { return state_; }
  const std::vector<ToolSpec>& catalog() const { return catalog_; }
  const std::vector<ToolCallRecord>& tool_calls() const { return calls_; }
  const std::vector<FaultEvent>& fault_events() const { return ctx_.events; }
  std::int64_t simulated_ms() const { return ctx_.simulated_ms; }
  const FaultProfile& profile() const { return profile_; }

 private:
  Domain domain_;
  DomainState state_;
  FaultProfile profile_;
  std::vector<ToolSpec> catalog_;
  EpisodeFaultContext ctx_;
  Rng rng_;
  std::vector<ToolCallRecord> calls_;
};

// Recomputes the final state from the start state and the recorded calls:
// explicit-error faults are skipped, everything else is re-applied.
DomainState ReplayToolCalls(const DomainState& initial,
                            const std::vector<ToolCallRecord>& calls);

}  // namespace relsurf

#endif  // RELSURF_CHAOS_H_
