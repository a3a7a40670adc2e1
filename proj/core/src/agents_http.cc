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

#include <cstdlib>

#include <httplib.h>

#include "relsurf/agents.h"

namespace relsurf {

HttpBackendConfig HttpBackendFromEnv(std::string_view model_id) {
  HttpBackendConfig config;
  config.model = std::string(model_id);
  const char* base = std::getenv("RELSURF_API_BASE");
  config.base_url = base && *base ? base : "https://api.openai.com";
  const char* key = std::getenv("RELSURF_API_KEY");
  if (!key || !*key) {
    throw ClientError(ClientErrorKind::kAuth, "RELSURF_API_KEY is not set");
  }
  config.api_key = key;
  return config;
}

HttpModelClient::HttpModelClient(HttpBackendConfig config) : config_(std::move(config)) {}

nlohmann::json HttpModelClient::EncodeRequest(const ModelRequest& request,
                                              std::string_view model) {
  nlohmann::json messages = nlohmann::json::array();
  if (!request.system.empty()) {
    messages.push_back({{"role", "system"}, {"content", request.system}});
  }
  for (const auto& m : request.messages) {
    nlohmann::json msg = {{"role", m.role}};
    if (m.role == "assistant" && m.tool_call) {
      msg["content"] = m.content.empty() ? nlohmann::json(nullptr) : nlohmann::json(m.content);
      msg["tool_calls"] = nlohmann::json::array(
          {{{"id", m.tool_call->id},
            {"type", "function"},
            {"function", {{"name", m.tool_call->name}, {"arguments", m.tool_call->args.dump()}}}}});
    } else {
      msg["content"] = m.content;
    }
    if (m.role == "tool") msg["tool_call_id"] = m.tool_call_id;
    messages.push_back(std::move(msg));
  }
  nlohmann::json body = {{"model", model}, {"messages", messages}};
  if (!request.tools.empty()) body["tools"] = request.tools;
  if (request.temperature) body["temperature"] = *request.temperature;
  if (request.seed_hint) body["seed"] = request.seed_hint;
  return body;
}

ModelResponse HttpModelClient::DecodeResponse(const nlohmann::json& body) {
  ModelResponse resp;
  if (!body.contains("choices") || !body["choices"].is_array() || body["choices"].empty()) {
    throw ClientError(ClientErrorKind::kPermanent, "response has no choices");
  }
  const auto& message = body["choices"][0].value("message", nlohmann::json::object());
  if (message.contains("content") && message["content"].is_string()) {
    resp.text = message["content"].get<std::string>();
  }
  if (message.contains("tool_calls") && message["tool_calls"].is_array()) {
    for (const auto& tc : message["tool_calls"]) {
      ToolCallRequest call;
      call.id = tc.value("id", "");
      const auto& fn = tc.value("function", nlohmann::json::object());
      call.name = fn.value("name", "");
      const auto& raw = fn.value("arguments", nlohmann::json("{}"));
      try {
        nlohmann::json args = raw.is_string() ? nlohmann::json::parse(raw.get<std::string>()) : raw;
        if (args.is_object()) {
          call.args = std::move(args);
        } else {
          call.args_error = "arguments must be a JSON object";
        }
      } catch (const nlohmann::json::exception&) {
        call.args_error = "arguments are not valid JSON";
      }
      resp.tool_calls.push_back(std::move(call));
    }
  }
  if (body.contains("usage") && body["usage"].is_object()) {
    resp.usage.input = body["usage"].value("prompt_tokens", 0);
    resp.usage.output = body["usage"].value("completion_tokens", 0);
  }
  return resp;
}

ModelResponse HttpModelClient::Send(const ModelRequest& request) {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_bearer_token_auth(config_.api_key);

  const auto start = std::chrono::steady_clock::now();
  auto res = client.Post(config_.path, EncodeRequest(request, config_.model).dump(),
                         "application/json");
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  if (!res) {
    throw ClientError(ClientErrorKind::kTransient,
                      "transport error: " + httplib::to_string(res.error()));
  }
  const int status = res->status;
  if (status == 401 || status == 403) {
    throw ClientError(ClientErrorKind::kAuth, "backend rejected credentials (" +
                                                  std::to_string(status) + ")");
  }
  if (status == 429) {
    if (res->body.find("insufficient_quota") != std::string::npos) {
      throw ClientError(ClientErrorKind::kQuota, "backend quota exhausted");
    }
    throw ClientError(ClientErrorKind::kTransient, "backend rate limited");
  }
  if (status >= 500) {
    throw ClientError(ClientErrorKind::kTransient, "backend error " + std::to_string(status));
  }
  if (status != 200) {
    throw ClientError(ClientErrorKind::kPermanent,
                      "backend returned " + std::to_string(status) + ": " + res->body.substr(0, 200));
  }
  nlohmann::json body;
  try {
    body = nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw ClientError(ClientErrorKind::kPermanent, std::string("malformed body: ") + e.what());
  }
  ModelResponse resp = DecodeResponse(body);
  resp.latency_ms = elapsed.count();
  return resp;
}

}  // namespace relsurf
