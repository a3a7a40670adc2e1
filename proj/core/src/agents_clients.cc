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
#include <fstream>
#include <sstream>
#include <thread>

#include "relsurf/agents.h"
#include "relsurf/errors.h"
#include "relsurf/rng.h"

namespace relsurf {

namespace data {
extern const std::string_view k_prompts_json;
}  // namespace data

std::int64_t EstimateTokens(std::string_view text) {
  return static_cast<std::int64_t>((text.size() + 3) / 4);
}

std::int64_t EstimateRequestTokens(const ModelRequest& request) {
  std::int64_t total = EstimateTokens(request.system);
  for (const auto& m : request.messages) {
    total += 4 + EstimateTokens(m.content);
    if (m.tool_call) {
      total += EstimateTokens(m.tool_call->name) + EstimateTokens(m.tool_call->args.dump());
    }
  }
  if (!request.tools.empty()) total += EstimateTokens(request.tools.dump());
  return total;
}

namespace {

nlohmann::json ParamSchema(ParamType t) {
  switch (t) {
    case ParamType::kStr: return {{"type", "string"}};
    case ParamType::kFloat: return {{"type", "number"}};
    case ParamType::kDictList:
      return {{"type", "array"}, {"items", {{"type", "object"}}}};
    case ParamType::kStrList:
      return {{"type", "array"}, {"items", {{"type", "string"}}}};
  }
  return {{"type", "string"}};
}

}  // namespace

nlohmann::json ToolSchemas(const std::vector<ToolSpec>& catalog) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& tool : catalog) {
    nlohmann::json props = nlohmann::json::object();
    nlohmann::json required = nlohmann::json::array();
    for (const auto& p : tool.params) {
      props[p.name] = ParamSchema(p.type);
      if (p.required) required.push_back(p.name);
    }
    out.push_back({{"type", "function"},
                   {"function",
                    {{"name", tool.name},
                     {"description", tool.description},
                     {"parameters",
                      {{"type", "object"}, {"properties", props}, {"required", required}}}}}});
  }
  return out;
}

// --- scripted backend --------------------------------------------------------

ScriptedModelClient::ScriptedModelClient(std::vector<ModelResponse> script)
    : script_(std::move(script)) {}

ScriptedModelClient ScriptedModelClient::FromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("responses") || !j["responses"].is_array()) {
    throw ValidationError("script fixture needs a 'responses' array");
  }
  std::vector<ModelResponse> script;
  for (const auto& r : j["responses"]) {
    ModelResponse resp;
    resp.text = r.value("text", "");
    if (r.contains("tool_call")) {
      const auto& tc = r["tool_call"];
      ToolCallRequest call;
      call.id = tc.value("id", "");
      call.name = tc.at("name").get<std::string>();
      call.args = tc.value("arguments", nlohmann::json::object());
      if (!call.args.is_object()) {
        call.args_error = "arguments must be a JSON object";
        call.args = nlohmann::json::object();
      }
      resp.tool_calls.push_back(std::move(call));
    }
    if (r.contains("usage")) {
      resp.usage.input = r["usage"].value("input", 0);
      resp.usage.output = r["usage"].value("output", 0);
    }
    script.push_back(std::move(resp));
  }
  return ScriptedModelClient(std::move(script));
}

ScriptedModelClient ScriptedModelClient::FromFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open script fixture " + path.string());
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

ModelResponse ScriptedModelClient::Send(const ModelRequest& request) {
  if (next_ >= script_.size()) {
    throw ClientError(ClientErrorKind::kPermanent, "script exhausted");
  }
  ModelResponse resp = script_[next_++];
  if (request.tools.empty()) resp.tool_calls.clear();
  for (std::size_t i = 0; i < resp.tool_calls.size(); ++i) {
    if (resp.tool_calls[i].id.empty()) {
      resp.tool_calls[i].id = "call_" + std::to_string(next_) + "_" + std::to_string(i);
    }
  }
  return resp;
}

// --- retrying wrapper --------------------------------------------------------

RetryingModelClient::RetryingModelClient(std::shared_ptr<ModelClient> inner, int max_attempts,
                                         std::chrono::milliseconds base_backoff,
                                         std::chrono::milliseconds max_backoff,
                                         Sleeper sleeper)
    : inner_(std::move(inner)),
      max_attempts_(std::max(1, max_attempts)),
      base_backoff_(base_backoff),
      max_backoff_(max_backoff),
      sleeper_(std::move(sleeper)) {
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

ModelResponse RetryingModelClient::Send(const ModelRequest& request) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    telemetry_.logical_sends++;
    if (min_interval_.count() > 0) {
      auto now = std::chrono::steady_clock::now();
      auto ready = last_send_ + min_interval_;
      if (now < ready) {
        sleeper_(std::chrono::duration_cast<std::chrono::milliseconds>(ready - now));
      }
      last_send_ = std::chrono::steady_clock::now();
    }
  }
  std::chrono::milliseconds backoff = base_backoff_;
  for (int attempt = 1;; ++attempt) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      telemetry_.attempts++;
    }
    try {
      ModelResponse resp = inner_->Send(request);
      std::lock_guard<std::mutex> lock(mu_);
      telemetry_.latency_ms += resp.latency_ms;
      return resp;
    } catch (const ClientError& e) {
      if (e.kind() != ClientErrorKind::kTransient || attempt >= max_attempts_) throw;
    }
    sleeper_(backoff);
    backoff = std::min(max_backoff_, backoff * 2);
  }
}

RetryTelemetry RetryingModelClient::telemetry() const {
  std::lock_guard<std::mutex> lock(mu_);
  return telemetry_;
}

// --- prompts -----------------------------------------------------------------

const PromptSet& DefaultPrompts() {
  static const PromptSet kPrompts = [] {
    auto j = nlohmann::json::parse(data::k_prompts_json);
    PromptSet p;
    p.version = j.at("version").get<int>();
    p.role_line = j.at("role_line").get<std::string>();
    p.format_contract = j.at("format_contract").get<std::string>();
    p.continue_nudge = j.at("continue_nudge").get<std::string>();
    p.reflection_request = j.at("reflection_request").get<std::string>();
    p.reflection_prefix = j.at("reflection_prefix").get<std::string>();
    p.finish_prefix = j.at("finish_prefix").get<std::string>();
    p.failure_marker = j.at("failure_marker").get<std::string>();
    return p;
  }();
  return kPrompts;
}

std::string BuildSystemPrompt(const std::vector<ToolSpec>& catalog, const PromptSet& prompts) {
  std::ostringstream out;
  out << prompts.role_line << "\n\nTools:\n";
  for (const auto& tool : catalog) {
    out << "- " << tool.name << "(";
    for (std::size_t i = 0; i < tool.params.size(); ++i) {
      const auto& p = tool.params[i];
      if (i) out << ", ";
      out << p.name << ": " << ToString(p.type) << (p.required ? "" : "?");
    }
    out << "): " << tool.description << "\n";
  }
  out << "\n" << prompts.format_contract;
  return out.str();
}

// --- planned stub backend ----------------------------------------------------

PlannedModelClient::PlannedModelClient(const TaskSpec& task, std::uint64_t seed,
                                       double slip_rate)
    : planner_(task) {
  Rng rng(seed, RngStream::kAgent);
  omit_payment_ = rng.Uniform() < slip_rate;
  abandon_on_rate_limit_ = rng.Uniform() < slip_rate;
}

ModelResponse PlannedModelClient::Send(const ModelRequest& request) {
  const PromptSet& prompts = DefaultPrompts();
  ModelResponse resp;
  auto finish_usage = [&] {
    std::string out = resp.text;
    for (const auto& c : resp.tool_calls) out += c.name + c.args.dump();
    resp.usage.input = EstimateRequestTokens(request);
    resp.usage.output = EstimateTokens(out);
  };

  std::size_t tool_messages = 0;
  const ChatMessage* last_tool = nullptr;
  for (const auto& m : request.messages) {
    if (m.role == "tool") {
      tool_messages++;
      last_tool = &m;
    }
  }

  if (request.tools.empty()) {
    // Reflection request: a repaired plan from here on.
    omit_payment_ = false;
    abandon_on_rate_limit_ = false;
    resp.text = prompts.reflection_prefix +
                " the last attempt stopped on a tool error; I will re-read the latest"
                " result and retry with complete arguments.";
    finish_usage();
    return resp;
  }

  std::optional<std::string> observation;
  if (tool_messages > consumed_tool_messages_ && last_tool) {
    observation = last_tool->content;
    consumed_tool_messages_ = tool_messages;
  } else if (held_observation_) {
    observation = std::move(held_observation_);
    held_observation_.reset();
  }

  if (observation && abandon_on_rate_limit_ && observation->rfind("error: rate_limited", 0) == 0) {
    held_observation_ = observation;
    slipped_ = true;
    resp.text = prompts.finish_prefix + " " + prompts.failure_marker +
                " the service is rate limiting requests.";
    finish_usage();
    return resp;
  }
  if (observation && slipped_ && omit_payment_ &&
      observation->rfind("error: payment_required", 0) == 0) {
    held_observation_ = observation;
    resp.text = prompts.finish_prefix + " Booking confirmed.";
    finish_usage();
    return resp;
  }

  Action action = planner_.Next(observation);
  switch (action.kind) {
    case Action::Kind::kToolCall: {
      ToolCallRequest call;
      call.id = "call_" + std::to_string(++call_seq_);
      call.name = action.tool;
      call.args = action.args;
      if (omit_payment_ && !slipped_ && call.name == "confirm_booking") {
        call.args["payment_info"] = "";
        slipped_ = true;
      }
      resp.text = action.text;
      resp.tool_calls.push_back(std::move(call));
      break;
    }
    case Action::Kind::kWait:
    case Action::Kind::kFinish:
      resp.text = action.text;
      break;
  }
  finish_usage();
  return resp;
}

}  // namespace relsurf
