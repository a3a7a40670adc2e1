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

#ifndef RELSURF_AGENTS_H_
#define RELSURF_AGENTS_H_

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "relsurf/chaos.h"
#include "relsurf/domains.h"
#include "relsurf/records.h"
#include "relsurf/task.h"

namespace relsurf {

// ---------------------------------------------------------------------------
// Model wire types
// ---------------------------------------------------------------------------

struct ToolCallRequest {
  std::string id;
  std::string name;
  ToolArgs args = ToolArgs::object();
  // Set when the backend returned arguments that are not a JSON object.
  std::optional<std::string> args_error;
};

struct ChatMessage {
  std::string role;  // system, user, assistant, tool
  std::string content;
  std::optional<ToolCallRequest> tool_call;  // assistant turns only
  std::string tool_call_id;                  // tool turns only
};

struct ModelRequest {
  std::string system;
  std::vector<ChatMessage> messages;
  nlohmann::json tools = nlohmann::json::array();  // function schemas
  std::optional<double> temperature;
  std::uint64_t seed_hint = 0;
};

struct TokenUsage {
  std::int64_t input = 0;
  std::int64_t output = 0;
};

struct ModelResponse {
  std::string text;
  std::vector<ToolCallRequest> tool_calls;
  TokenUsage usage;
  std::int64_t latency_ms = 0;
};

enum class ClientErrorKind { kAuth, kQuota, kTransient, kPermanent };

class ClientError : public std::runtime_error {
 public:
  ClientError(ClientErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ClientErrorKind kind() const { return kind_; }

 private:
  ClientErrorKind kind_;
};

class ModelClient {
 public:
  virtual ~ModelClient() = default;
  virtual ModelResponse Send(const ModelRequest& request) = 0;
};

// Rough token count used by offline backends: one token per four bytes.
std::int64_t EstimateTokens(std::string_view text);
std::int64_t EstimateRequestTokens(const ModelRequest& request);

// Function-calling schema for every tool in the catalog.
nlohmann::json ToolSchemas(const std::vector<ToolSpec>& catalog);

// ---------------------------------------------------------------------------
// Backends
// ---------------------------------------------------------------------------

// Replays a fixed list of responses in order. With an empty tool catalog in
// the request, tool calls are dropped and only the text is returned.
class ScriptedModelClient : public ModelClient {
 public:
  explicit ScriptedModelClient(std::vector<ModelResponse> script);
  // Fixture format: {"responses": [{"text": "...", "tool_call": {"name":
  // "...", "arguments": {...}}, "usage": {"input": n, "output": m}}, ...]}
  static ScriptedModelClient FromFile(const std::filesystem::path& path);
  static ScriptedModelClient FromJson(const nlohmann::json& j);

  ModelResponse Send(const ModelRequest& request) override;
  std::size_t calls() const { return next_; }

 private:
  std::vector<ModelResponse> script_;
  std::size_t next_ = 0;
};

struct RetryTelemetry {
  std::int64_t logical_sends = 0;
  std::int64_t attempts = 0;
  std::int64_t latency_ms = 0;
};

// Retries transient transport failures with capped exponential backoff.
// Safe for concurrent Send() calls; requests are spaced by min_interval.
class RetryingModelClient : public ModelClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  RetryingModelClient(std::shared_ptr<ModelClient> inner, int max_attempts = 3,
                      std::chrono::milliseconds base_backoff = std::chrono::milliseconds(500),
                      std::chrono::milliseconds max_backoff = std::chrono::milliseconds(4000),
                      Sleeper sleeper = {});

  ModelResponse Send(const ModelRequest& request) override;
  RetryTelemetry telemetry() const;
  void set_min_interval(std::chrono::milliseconds interval) { min_interval_ = interval; }

 private:
  std::shared_ptr<ModelClient> inner_;
  int max_attempts_;
  std::chrono::milliseconds base_backoff_;
  std::chrono::milliseconds max_backoff_;
  std::chrono::milliseconds min_interval_{0};
  Sleeper sleeper_;
  mutable std::mutex mu_;
  RetryTelemetry telemetry_;
  std::chrono::steady_clock::time_point last_send_{};
};

struct HttpBackendConfig {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string api_key;
  std::string model;
  int timeout_seconds = 60;
};

// Reads RELSURF_API_BASE and RELSURF_API_KEY. Throws ClientError(kAuth)
// when the key is missing.
HttpBackendConfig HttpBackendFromEnv(std::string_view model_id);

// Chat-completions style endpoint with function calling.
class HttpModelClient : public ModelClient {
 public:
  explicit HttpModelClient(HttpBackendConfig config);
  ModelResponse Send(const ModelRequest& request) override;

  static nlohmann::json EncodeRequest(const ModelRequest& request,
                                      std::string_view model);
  static ModelResponse DecodeResponse(const nlohmann::json& body);

 private:
  HttpBackendConfig config_;
};

// ---------------------------------------------------------------------------
// Prompts
// ---------------------------------------------------------------------------

struct PromptSet {
  int version = 0;
  std::string role_line;
  std::string format_contract;
  std::string continue_nudge;
  std::string reflection_request;
  std::string reflection_prefix;
  std::string finish_prefix;   // "FINAL:"
  std::string failure_marker;  // "FAILED"
};

const PromptSet& DefaultPrompts();
std::string BuildSystemPrompt(const std::vector<ToolSpec>& catalog,
                              const PromptSet& prompts = DefaultPrompts());

// ---------------------------------------------------------------------------
// Policies
// ---------------------------------------------------------------------------

struct Action {
  enum class Kind { kToolCall, kWait, kFinish };
  Kind kind = Kind::kFinish;
  std::string tool;
  ToolArgs args = ToolArgs::object();
  std::string text;  // thought, or the final answer

  static Action Call(std::string tool, ToolArgs args, std::string thought = {});
  static Action Wait(std::string thought);
  static Action Finish(std::string answer);
};

struct RetryPolicy {
  int max_retries = 3;  // per plan step
};

// Scripted solver that reads goal_meta, never the description. Consumes the
// observation of its previous tool call and returns the next action.
class OraclePlanner {
 public:
  explicit OraclePlanner(const TaskSpec& task, RetryPolicy policy = {});
  ~OraclePlanner();
  OraclePlanner(OraclePlanner&&) noexcept;
  OraclePlanner& operator=(OraclePlanner&&) noexcept;

  Action Next(const std::optional<std::string>& observation);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Stub backend for offline grids: plays the oracle plan through the model
// protocol. With slip_rate > 0 the episode may (seeded) forget payment
// details or abandon on a rate limit, the two failure modes a reflection
// pass can repair.
class PlannedModelClient : public ModelClient {
 public:
  PlannedModelClient(const TaskSpec& task, std::uint64_t seed,
                     double slip_rate = 0.0);
  ModelResponse Send(const ModelRequest& request) override;

 private:
  OraclePlanner planner_;
  bool omit_payment_ = false;
  bool abandon_on_rate_limit_ = false;
  bool slipped_ = false;
  std::optional<std::string> held_observation_;
  std::size_t consumed_tool_messages_ = 0;
  int call_seq_ = 0;
};

struct AgentOptions {
  int max_turns = 20;
  int max_reflections = 2;
  std::optional<double> temperature;
  std::uint64_t seed_hint = 0;
};

struct Trajectory {
  std::vector<Turn> transcript;
  int turns = 0;
  int reflections = 0;
  bool finished = false;  // finish() reached before the turn cap
  std::string final_answer;
  bool errored = false;  // model transport failure
  std::string error_message;
  TokenUsage usage;
  std::int64_t model_latency_ms = 0;
};

Trajectory RunReact(const TaskSpec& task, DomainSession& session,
                    ModelClient& model, const AgentOptions& options);

Trajectory RunReflexion(const TaskSpec& task, DomainSession& session,
                        ModelClient& model, const AgentOptions& options);

Trajectory RunOracle(const TaskSpec& task, DomainSession& session,
                     const RetryPolicy& policy = {}, int max_turns = 20);

}  // namespace relsurf

#endif  // RELSURF_AGENTS_H_
