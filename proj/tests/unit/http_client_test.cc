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

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include <httplib.h>

#include <cstdlib>
#include <mutex>
#include <thread>

#include "relsurf/agents.h"

namespace relsurf {
namespace {

using ::testing::HasSubstr;
using json = nlohmann::json;

// Loopback chat-completions endpoint that answers with a canned reply.
class FakeEndpoint {
 public:
  FakeEndpoint() {
    server_.Post("/v1/chat/completions", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mu_);
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      res.status = status_;
      res.set_content(reply_, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEndpoint() {
    server_.stop();
    thread_.join();
  }

  void Reply(int status, std::string body) {
    std::lock_guard lock(mu_);
    status_ = status;
    reply_ = std::move(body);
  }
  json LastBody() {
    std::lock_guard lock(mu_);
    return json::parse(last_body_);
  }
  std::string LastAuth() {
    std::lock_guard lock(mu_);
    return last_auth_;
  }
  HttpBackendConfig Config() const {
    HttpBackendConfig c;
    c.base_url = "http://127.0.0.1:" + std::to_string(port_);
    c.api_key = "sk-test";
    c.model = "gpt-4o";
    c.timeout_seconds = 5;
    return c;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mu_;
  int status_ = 200;
  std::string reply_ = "{}";
  std::string last_body_;
  std::string last_auth_;
};

ModelRequest SampleRequest() {
  ModelRequest req;
  req.system = "You are a test.";
  req.messages.push_back({"user", "Book it.", std::nullopt, ""});
  ToolCallRequest call{"call_0", "hold_flight", {{"flight_id", "AA-500"}}, std::nullopt};
  req.messages.push_back({"assistant", "", call, ""});
  req.messages.push_back({"tool", "ok: held flight_id=AA-500", std::nullopt, "call_0"});
  req.tools = ToolSchemas(ToolCatalog(Domain::kTravel));
  req.temperature = 0.0;
  req.seed_hint = 17;
  return req;
}

const char* kToolReply = R"({
  "choices": [{"message": {"role": "assistant", "content": null, "tool_calls": [
    {"id": "call_9", "type": "function",
     "function": {"name": "confirm_booking",
                  "arguments": "{\"flight_id\": \"AA-500\", \"passenger\": \"Bob\", \"payment_info\": \"VISA\"}"}}]}}],
  "usage": {"prompt_tokens": 321, "completion_tokens": 45}})";

TEST(HttpClientTest, RoundTripThroughLoopback) {
  FakeEndpoint ep;
  ep.Reply(200, kToolReply);
  HttpModelClient client(ep.Config());
  ModelResponse resp = client.Send(SampleRequest());
  ASSERT_EQ(resp.tool_calls.size(), 1u);
  EXPECT_EQ(resp.tool_calls[0].id, "call_9");
  EXPECT_EQ(resp.tool_calls[0].name, "confirm_booking");
  EXPECT_EQ(resp.tool_calls[0].args["passenger"], "Bob");
  EXPECT_EQ(resp.usage.input, 321);
  EXPECT_EQ(resp.usage.output, 45);
  EXPECT_GE(resp.latency_ms, 0);

  EXPECT_EQ(ep.LastAuth(), "Bearer sk-test");
  const json body = ep.LastBody();
  EXPECT_EQ(body["model"], "gpt-4o");
  EXPECT_EQ(body["seed"], 17);
  EXPECT_EQ(body["temperature"], 0.0);
  ASSERT_EQ(body["messages"].size(), 4u);
  EXPECT_EQ(body["messages"][0]["role"], "system");
  EXPECT_EQ(body["messages"][2]["tool_calls"][0]["function"]["arguments"],
            R"({"flight_id":"AA-500"})");
  EXPECT_EQ(body["messages"][3]["tool_call_id"], "call_0");
  EXPECT_EQ(body["tools"].size(), ToolCatalog(Domain::kTravel).size());
}

TEST(HttpClientTest, StatusMapping) {
  FakeEndpoint ep;
  HttpModelClient client(ep.Config());
  auto kind_for = [&](int status, const std::string& body) {
    ep.Reply(status, body);
    try {
      client.Send(SampleRequest());
    } catch (const ClientError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error for status " << status;
    return ClientErrorKind::kPermanent;
  };
  EXPECT_EQ(kind_for(401, "{}"), ClientErrorKind::kAuth);
  EXPECT_EQ(kind_for(403, "{}"), ClientErrorKind::kAuth);
  EXPECT_EQ(kind_for(429, R"({"error": {"code": "rate_limit_exceeded"}})"),
            ClientErrorKind::kTransient);
  EXPECT_EQ(kind_for(429, R"({"error": {"code": "insufficient_quota"}})"), ClientErrorKind::kQuota);
  EXPECT_EQ(kind_for(503, "{}"), ClientErrorKind::kTransient);
  EXPECT_EQ(kind_for(400, "{}"), ClientErrorKind::kPermanent);
  EXPECT_EQ(kind_for(200, "not json"), ClientErrorKind::kPermanent);
  EXPECT_EQ(kind_for(200, R"({"choices": []})"), ClientErrorKind::kPermanent);
}

TEST(HttpClientTest, UnreachableHostIsTransient) {
  HttpBackendConfig c;
  c.base_url = "http://127.0.0.1:1";
  c.api_key = "x";
  c.timeout_seconds = 1;
  HttpModelClient client(c);
  try {
    client.Send(SampleRequest());
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.kind(), ClientErrorKind::kTransient);
  }
}

TEST(HttpClientTest, RetriesTransientFailures) {
  FakeEndpoint ep;
  ep.Reply(503, "{}");
  auto inner = std::make_shared<HttpModelClient>(ep.Config());
  std::vector<std::chrono::milliseconds> sleeps;
  RetryingModelClient client(inner, 3, std::chrono::milliseconds(10),
                             std::chrono::milliseconds(15),
                             [&](std::chrono::milliseconds d) { sleeps.push_back(d); });
  EXPECT_THROW(client.Send(SampleRequest()), ClientError);
  EXPECT_EQ(client.telemetry().attempts, 3);
  EXPECT_EQ(sleeps, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(10),
                                                            std::chrono::milliseconds(15)}));
  ep.Reply(200, kToolReply);
  EXPECT_EQ(client.Send(SampleRequest()).tool_calls.size(), 1u);
  EXPECT_EQ(client.telemetry().logical_sends, 2);
}

TEST(HttpCodecTest, DecodeHandlesBadArguments) {
  json body = json::parse(kToolReply);
  body["choices"][0]["message"]["tool_calls"][0]["function"]["arguments"] = "{oops";
  EXPECT_THAT(*HttpModelClient::DecodeResponse(body).tool_calls[0].args_error,
              HasSubstr("not valid JSON"));
  body["choices"][0]["message"]["tool_calls"][0]["function"]["arguments"] = "[1,2]";
  EXPECT_THAT(*HttpModelClient::DecodeResponse(body).tool_calls[0].args_error,
              HasSubstr("JSON object"));
  json text_only = {{"choices", {{{"message", {{"content", "FINAL: done"}}}}}}};
  ModelResponse r = HttpModelClient::DecodeResponse(text_only);
  EXPECT_EQ(r.text, "FINAL: done");
  EXPECT_TRUE(r.tool_calls.empty());
  EXPECT_EQ(r.usage.input, 0);
}

TEST(HttpCodecTest, EncodeOmitsUnsetOptions) {
  ModelRequest req;
  req.messages.push_back({"user", "hi", std::nullopt, ""});
  const json body = HttpModelClient::EncodeRequest(req, "m");
  EXPECT_FALSE(body.contains("tools"));
  EXPECT_FALSE(body.contains("temperature"));
  EXPECT_FALSE(body.contains("seed"));
  EXPECT_EQ(body["messages"].size(), 1u);
}

TEST(HttpEnvTest, KeyRequired) {
  ::unsetenv("RELSURF_API_KEY");
  try {
    HttpBackendFromEnv("gpt-4o");
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.kind(), ClientErrorKind::kAuth);
  }
  ::setenv("RELSURF_API_KEY", "k", 1);
  ::setenv("RELSURF_API_BASE", "http://localhost:9", 1);
  HttpBackendConfig c = HttpBackendFromEnv("gpt-4o");
  EXPECT_EQ(c.api_key, "k");
  EXPECT_EQ(c.base_url, "http://localhost:9");
  EXPECT_EQ(c.model, "gpt-4o");
  ::unsetenv("RELSURF_API_KEY");
  ::unsetenv("RELSURF_API_BASE");
}

}  // namespace
}  // namespace relsurf
