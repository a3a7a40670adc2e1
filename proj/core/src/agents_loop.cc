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

#include <string>

#include "relsurf/agents.h"

namespace relsurf {

Action Action::Call(std::string tool, ToolArgs args, std::string thought) {
  Action a;
  a.kind = Kind::kToolCall;
  a.tool = std::move(tool);
  a.args = std::move(args);
  a.text = std::move(thought);
  return a;
}

Action Action::Wait(std::string thought) {
  Action a;
  a.kind = Kind::kWait;
  a.text = std::move(thought);
  return a;
}

Action Action::Finish(std::string answer) {
  Action a;
  a.kind = Kind::kFinish;
  a.text = std::move(answer);
  return a;
}

namespace {

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string RenderCall(const std::string& thought, const ToolCallRequest& call) {
  std::string out = thought;
  if (!out.empty()) out += "\n";
  out += "call " + call.name + " " + call.args.dump();
  return out;
}

// An explicit error is unresolved while it is the latest result of its tool.
bool HasUnresolvedToolError(const DomainSession& session) {
  std::map<std::string, std::string, std::less<>> latest;
  for (const auto& c : session.tool_calls()) latest[c.tool_name] = c.result_text;
  for (const auto& [tool, text] : latest) {
    if (StartsWith(text, "error:")) return true;
  }
  return false;
}

Trajectory RunLoop(const TaskSpec& task, DomainSession& session, ModelClient& model,
                   const AgentOptions& options, int max_reflections) {
  const PromptSet& prompts = DefaultPrompts();
  Trajectory traj;
  ModelRequest request;
  request.system = BuildSystemPrompt(session.catalog(), prompts);
  request.temperature = options.temperature;
  request.seed_hint = options.seed_hint;
  const nlohmann::json tools = ToolSchemas(session.catalog());

  auto append = [&](ChatMessage m) {
    traj.transcript.push_back({m.role, m.tool_call ? RenderCall(m.content, *m.tool_call)
                                                   : m.content});
    request.messages.push_back(std::move(m));
  };
  traj.transcript.push_back({"system", request.system});
  append({"user", task.description, std::nullopt, {}});

  auto send = [&](const nlohmann::json& offered) -> std::optional<ModelResponse> {
    request.tools = offered;
    session.BeginTurn();
    traj.turns++;
    try {
      ModelResponse resp = model.Send(request);
      traj.usage.input += resp.usage.input;
      traj.usage.output += resp.usage.output;
      traj.model_latency_ms += resp.latency_ms;
      return resp;
    } catch (const std::exception& e) {
      traj.errored = true;
      traj.error_message = e.what();
      return std::nullopt;
    }
  };

  while (traj.turns < options.max_turns) {
    auto resp = send(tools);
    if (!resp) return traj;

    if (!resp->tool_calls.empty()) {
      const ToolCallRequest& call = resp->tool_calls.front();
      append({"assistant", resp->text, call, {}});
      std::string observation;
      if (resp->tool_calls.size() > 1) {
        observation = "invalid arguments: parallel tool calls are not supported; call one tool per turn";
      } else if (call.args_error) {
        observation = "invalid arguments: " + *call.args_error;
      } else {
        observation = session.Call(call.name, call.args).observation;
      }
      append({"tool", observation, std::nullopt, call.id});
      continue;
    }

    append({"assistant", resp->text, std::nullopt, {}});
    if (!StartsWith(resp->text, prompts.finish_prefix)) {
      append({"user", prompts.continue_nudge, std::nullopt, {}});
      continue;
    }

    const bool failed = resp->text.find(prompts.failure_marker) != std::string::npos;
    if ((failed || HasUnresolvedToolError(session)) && traj.reflections < max_reflections &&
        traj.turns < options.max_turns) {
      request.messages.push_back({"user", prompts.reflection_request, std::nullopt, {}});
      traj.transcript.push_back({"user", prompts.reflection_request});
      auto reflection = send(nlohmann::json::array());
      if (!reflection) return traj;
      traj.reflections++;
      append({"assistant", reflection->text, std::nullopt, {}});
      append({"user", prompts.continue_nudge, std::nullopt, {}});
      continue;
    }
    traj.finished = true;
    traj.final_answer = resp->text.substr(prompts.finish_prefix.size());
    while (!traj.final_answer.empty() && traj.final_answer.front() == ' ') {
      traj.final_answer.erase(0, 1);
    }
    return traj;
  }
  return traj;
}

}  // namespace

Trajectory RunReact(const TaskSpec& task, DomainSession& session, ModelClient& model,
                    const AgentOptions& options) {
  return RunLoop(task, session, model, options, 0);
}

Trajectory RunReflexion(const TaskSpec& task, DomainSession& session, ModelClient& model,
                        const AgentOptions& options) {
  return RunLoop(task, session, model, options, options.max_reflections);
}

Trajectory RunOracle(const TaskSpec& task, DomainSession& session, const RetryPolicy& policy,
                     int max_turns) {
  Trajectory traj;
  OraclePlanner planner(task, policy);
  traj.transcript.push_back({"user", task.description});
  std::optional<std::string> observation;
  while (traj.turns < max_turns) {
    session.BeginTurn();
    traj.turns++;
    Action action = planner.Next(observation);
    observation.reset();
    switch (action.kind) {
      case Action::Kind::kToolCall: {
        traj.transcript.push_back(
            {"assistant", action.text + "\ncall " + action.tool + " " + action.args.dump()});
        observation = session.Call(action.tool, action.args).observation;
        traj.transcript.push_back({"tool", *observation});
        break;
      }
      case Action::Kind::kWait:
        traj.transcript.push_back({"assistant", action.text});
        break;
      case Action::Kind::kFinish:
        traj.transcript.push_back({"assistant", action.text});
        traj.finished = true;
        traj.final_answer = action.text;
        return traj;
    }
  }
  return traj;
}

}  // namespace relsurf
