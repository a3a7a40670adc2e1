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

#include "relsurf/records.h"

#include <cmath>
#include <set>

#include "relsurf/errors.h"

namespace relsurf {

using nlohmann::json;

std::string CheckRecordInvariants(const EpisodeRecord& r) {
  if (r.task_id.empty()) return "empty task_id";
  if (!(r.epsilon >= 0.0 && r.epsilon <= 1.0)) return "epsilon out of [0,1]";
  if (!(r.lambda_level >= 0.0 && r.lambda_level <= 1.0)) return "lambda out of [0,1]";
  if (!(r.cost_usd >= 0.0)) return "negative cost";
  if (r.tokens_in < 0 || r.tokens_out < 0) return "negative token count";
  double weight = 0.0;
  for (const auto& mr : r.applied_mrs) weight += mr.weight;
  if (std::fabs(weight - r.epsilon) > 1e-9) return "applied_mrs weights do not sum to epsilon";
  for (std::size_t i = 0; i < r.tool_calls.size(); ++i) {
    const auto& call = r.tool_calls[i];
    if (call.index != i) return "tool_calls index out of sequence";
    if (call.is_explicit_fault && !call.fault_annotation) {
      return "explicit fault without annotation at call " + std::to_string(i);
    }
    if (!call.args.is_object()) return "tool args must be an object";
  }
  for (const auto& ev : r.fault_events) {
    if (ev.tool_call_index >= r.tool_calls.size()) {
      return "fault event references missing tool call " +
             std::to_string(ev.tool_call_index);
    }
  }
  if (r.errored && r.success) return "errored episode marked successful";
  return {};
}

json RecordToJson(const EpisodeRecord& r) {
  json mrs = json::array();
  for (const auto& m : r.applied_mrs) {
    mrs.push_back({{"mr_id", ToString(m.mr_id)}, {"weight", m.weight}, {"applied", m.applied}});
  }
  json transcript = json::array();
  for (const auto& t : r.transcript) {
    transcript.push_back({{"role", t.role}, {"content", t.content}});
  }
  json calls = json::array();
  for (const auto& c : r.tool_calls) {
    calls.push_back({{"index", c.index},
                     {"tool_name", c.tool_name},
                     {"args", c.args},
                     {"result_text", c.result_text},
                     {"fault_annotation", c.fault_annotation
                                              ? json(ToString(*c.fault_annotation))
                                              : json(nullptr)},
                     {"is_explicit_fault", c.is_explicit_fault}});
  }
  json faults = json::array();
  for (const auto& f : r.fault_events) {
    faults.push_back({{"tool_call_index", f.tool_call_index},
                      {"fault_id", ToString(f.fault_id)},
                      {"was_explicit", f.was_explicit},
                      {"recovered", f.recovered}});
  }
  return json{{"schema_version", kSchemaVersion},
              {"task_id", r.task_id},
              {"epsilon", r.epsilon},
              {"lambda_level", r.lambda_level},
              {"profile", r.profile},
              {"trial_index", r.trial_index},
              {"agent_id", r.agent_id},
              {"model_id", r.model_id},
              {"seed", r.seed},
              {"perturbed_description", r.perturbed_description},
              {"applied_mrs", mrs},
              {"transcript", transcript},
              {"tool_calls", calls},
              {"fault_events", faults},
              {"success", r.success},
              {"errored", r.errored},
              {"error_message", r.error_message},
              {"final_state", StateToJson(r.final_state)},
              {"tokens_in", r.tokens_in},
              {"tokens_out", r.tokens_out},
              {"wall_ms", r.wall_ms},
              {"cost_usd", r.cost_usd}};
}

namespace {

FaultId FaultFromJson(const json& j) {
  auto id = ParseFaultId(j.get<std::string>());
  if (!id) throw ValidationError("unknown fault id '" + j.get<std::string>() + "'");
  return *id;
}

}  // namespace

EpisodeRecord RecordFromJson(const json& j) {
  static const std::set<std::string> kKeys = {
      "schema_version", "task_id", "epsilon", "lambda_level", "profile",
      "trial_index", "agent_id", "model_id", "seed", "perturbed_description",
      "applied_mrs", "transcript", "tool_calls", "fault_events", "success",
      "errored", "error_message", "final_state", "tokens_in", "tokens_out",
      "wall_ms", "cost_usd"};
  if (!j.is_object()) throw ValidationError("record is not an object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) throw ValidationError("unknown record field '" + key + "'");
  }
  EpisodeRecord r;
  try {
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw ValidationError("unsupported schema_version " + std::to_string(version));
    }
    r.task_id = j.at("task_id").get<std::string>();
    r.epsilon = j.at("epsilon").get<double>();
    r.lambda_level = j.at("lambda_level").get<double>();
    r.profile = j.at("profile").get<std::string>();
    r.trial_index = j.at("trial_index").get<std::uint32_t>();
    r.agent_id = j.at("agent_id").get<std::string>();
    r.model_id = j.at("model_id").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.perturbed_description = j.at("perturbed_description").get<std::string>();
    for (const auto& m : j.at("applied_mrs")) {
      auto id = ParseMrId(m.at("mr_id").get<std::string>());
      if (!id) throw ValidationError("unknown mr_id");
      r.applied_mrs.push_back({*id, m.at("weight").get<double>(), m.at("applied").get<bool>()});
    }
    for (const auto& t : j.at("transcript")) {
      r.transcript.push_back({t.at("role").get<std::string>(), t.at("content").get<std::string>()});
    }
    for (const auto& c : j.at("tool_calls")) {
      ToolCallRecord call;
      call.index = c.at("index").get<std::size_t>();
      call.tool_name = c.at("tool_name").get<std::string>();
      call.args = c.at("args");
      call.result_text = c.at("result_text").get<std::string>();
      if (!c.at("fault_annotation").is_null()) {
        call.fault_annotation = FaultFromJson(c.at("fault_annotation"));
      }
      call.is_explicit_fault = c.at("is_explicit_fault").get<bool>();
      r.tool_calls.push_back(std::move(call));
    }
    for (const auto& f : j.at("fault_events")) {
      r.fault_events.push_back({f.at("tool_call_index").get<std::size_t>(),
                                FaultFromJson(f.at("fault_id")),
                                f.at("was_explicit").get<bool>(),
                                f.at("recovered").get<bool>()});
    }
    r.success = j.at("success").get<bool>();
    r.errored = j.at("errored").get<bool>();
    r.error_message = j.at("error_message").get<std::string>();
    r.final_state = StateFromJson(j.at("final_state"));
    r.tokens_in = j.at("tokens_in").get<std::int64_t>();
    r.tokens_out = j.at("tokens_out").get<std::int64_t>();
    r.wall_ms = j.at("wall_ms").get<std::int64_t>();
    r.cost_usd = j.at("cost_usd").get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad record: ") + e.what());
  }
  return r;
}

}  // namespace relsurf
