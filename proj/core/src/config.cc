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

#include "relsurf/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "relsurf/errors.h"

namespace relsurf {

using nlohmann::json;

PriceTable DefaultPriceTable() {
  return {
      {"gemini-2.0-flash", {0.075, 0.30}},
      {"gpt-4o", {2.50, 10.00}},
  };
}

double ComputeCost(std::int64_t tokens_in, std::int64_t tokens_out,
                   std::string_view model_id, const PriceTable& prices) {
  if (tokens_in < 0 || tokens_out < 0) throw ConfigError("negative token count");
  auto it = prices.find(model_id);
  if (it == prices.end()) {
    throw ConfigError("no price for model '" + std::string(model_id) + "'");
  }
  return static_cast<double>(tokens_in) / 1e6 * it->second.usd_per_1m_input +
         static_cast<double>(tokens_out) / 1e6 * it->second.usd_per_1m_output;
}

std::string_view ToString(AblationProfile p) {
  switch (p) {
    case AblationProfile::kTimeoutOnly: return "timeout_only";
    case AblationProfile::kRateLimitOnly: return "rate_limit_only";
    case AblationProfile::kPartialOnly: return "partial_only";
    case AblationProfile::kMixed: return "mixed";
  }
  return "?";
}

std::optional<AblationProfile> ParseAblationProfile(std::string_view name) {
  for (auto p : {AblationProfile::kTimeoutOnly, AblationProfile::kRateLimitOnly,
                 AblationProfile::kPartialOnly, AblationProfile::kMixed}) {
    if (ToString(p) == name) return p;
  }
  return std::nullopt;
}

bool IsSupportedLevel(double level) {
  for (double v : {0.0, 0.1, 0.2, 0.3}) {
    if (std::fabs(level - v) < 1e-12) return true;
  }
  return false;
}

namespace {

void CheckAxis(const std::vector<double>& levels, const char* name) {
  if (levels.empty()) throw ConfigError(std::string(name) + " must not be empty");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!IsSupportedLevel(levels[i])) {
      throw ConfigError(std::string(name) + " level " + std::to_string(levels[i]) +
                        " is not one of 0.0, 0.1, 0.2, 0.3");
    }
    if (i > 0 && !(levels[i] > levels[i - 1])) {
      throw ConfigError(std::string(name) + " must be strictly ascending");
    }
  }
}

}  // namespace

void ValidateRunConfig(const RunConfig& c) {
  if (c.suite_id.empty()) throw ConfigError("suite_id must not be empty");
  if (c.k_trials < 1) throw ConfigError("k_trials must be >= 1");
  CheckAxis(c.epsilon_levels, "epsilon_levels");
  CheckAxis(c.lambda_levels, "lambda_levels");
  if (c.agent_ids.empty()) throw ConfigError("agent_ids must not be empty");
  std::set<std::string> seen;
  for (const auto& a : c.agent_ids) {
    if (a != "react" && a != "reflexion" && a != "oracle") {
      throw ConfigError("unknown agent '" + a + "'");
    }
    if (!seen.insert(a).second) throw ConfigError("duplicate agent '" + a + "'");
  }
  if (c.model_id.empty()) throw ConfigError("model_id must not be empty");
  if (c.max_turns_per_episode < 1) throw ConfigError("max_turns_per_episode must be >= 1");
  if (!(c.theta > 0.0 && c.theta < 1.0)) throw ConfigError("theta must be in (0,1)");
  if (c.max_reflections < 0) throw ConfigError("max_reflections must be >= 0");
  if (!(c.stub_slip_rate >= 0.0 && c.stub_slip_rate <= 1.0)) {
    throw ConfigError("stub_slip_rate must be in [0,1]");
  }
  if (c.temperature && !(*c.temperature >= 0.0 && *c.temperature <= 2.0)) {
    throw ConfigError("temperature must be in [0,2]");
  }
  for (const auto& [model, rate] : c.price_table) {
    if (rate.usd_per_1m_input < 0 || rate.usd_per_1m_output < 0) {
      throw ConfigError("negative price for " + model);
    }
  }
}

RunConfig ParseRunConfig(const json& j) {
  static const std::set<std::string> kKeys = {
      "suite_id", "k_trials", "epsilon_levels", "lambda_levels", "agent_ids",
      "model_id", "global_seed", "max_turns_per_episode", "theta", "price_table",
      "ablation_profile", "temperature", "max_reflections", "reperturb_per_trial",
      "empty_response_explicit", "stub_slip_rate"};
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig c;
  try {
    if (j.contains("suite_id")) c.suite_id = j["suite_id"].get<std::string>();
    if (j.contains("k_trials")) c.k_trials = j["k_trials"].get<int>();
    if (j.contains("epsilon_levels")) c.epsilon_levels = j["epsilon_levels"].get<std::vector<double>>();
    if (j.contains("lambda_levels")) c.lambda_levels = j["lambda_levels"].get<std::vector<double>>();
    if (j.contains("agent_ids")) c.agent_ids = j["agent_ids"].get<std::vector<std::string>>();
    if (j.contains("model_id")) c.model_id = j["model_id"].get<std::string>();
    if (j.contains("global_seed")) c.global_seed = j["global_seed"].get<std::uint64_t>();
    if (j.contains("max_turns_per_episode")) c.max_turns_per_episode = j["max_turns_per_episode"].get<int>();
    if (j.contains("theta")) c.theta = j["theta"].get<double>();
    if (j.contains("price_table")) {
      c.price_table.clear();
      for (const auto& [model, rate] : j["price_table"].items()) {
        for (const auto& [k, _] : rate.items()) {
          if (k != "usd_per_1m_input" && k != "usd_per_1m_output") {
            throw ConfigError("unknown price_table key '" + k + "'");
          }
        }
        c.price_table[model] = {rate.at("usd_per_1m_input").get<double>(),
                                rate.at("usd_per_1m_output").get<double>()};
      }
    }
    if (j.contains("ablation_profile") && !j["ablation_profile"].is_null()) {
      const auto name = j["ablation_profile"].get<std::string>();
      c.ablation_profile = ParseAblationProfile(name);
      if (!c.ablation_profile) throw ConfigError("unknown ablation_profile '" + name + "'");
    }
    if (j.contains("temperature") && !j["temperature"].is_null()) {
      c.temperature = j["temperature"].get<double>();
    }
    if (j.contains("max_reflections")) c.max_reflections = j["max_reflections"].get<int>();
    if (j.contains("reperturb_per_trial")) c.reperturb_per_trial = j["reperturb_per_trial"].get<bool>();
    if (j.contains("empty_response_explicit")) {
      c.empty_response_explicit = j["empty_response_explicit"].get<bool>();
    }
    if (j.contains("stub_slip_rate")) c.stub_slip_rate = j["stub_slip_rate"].get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  ValidateRunConfig(c);
  return c;
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return ParseRunConfig(j);
}

json RunConfigToJson(const RunConfig& c) {
  json prices = json::object();
  for (const auto& [model, rate] : c.price_table) {
    prices[model] = {{"usd_per_1m_input", rate.usd_per_1m_input},
                     {"usd_per_1m_output", rate.usd_per_1m_output}};
  }
  json j{{"suite_id", c.suite_id},
         {"k_trials", c.k_trials},
         {"epsilon_levels", c.epsilon_levels},
         {"lambda_levels", c.lambda_levels},
         {"agent_ids", c.agent_ids},
         {"model_id", c.model_id},
         {"global_seed", c.global_seed},
         {"max_turns_per_episode", c.max_turns_per_episode},
         {"theta", c.theta},
         {"price_table", prices},
         {"max_reflections", c.max_reflections},
         {"reperturb_per_trial", c.reperturb_per_trial},
         {"empty_response_explicit", c.empty_response_explicit},
         {"stub_slip_rate", c.stub_slip_rate}};
  if (c.ablation_profile) j["ablation_profile"] = ToString(*c.ablation_profile);
  if (c.temperature) j["temperature"] = *c.temperature;
  return j;
}

std::size_t ExpectedEpisodeCount(const RunConfig& c, std::size_t num_tasks) {
  return num_tasks * c.epsilon_levels.size() * c.lambda_levels.size() *
         c.agent_ids.size() * static_cast<std::size_t>(c.k_trials);
}

}  // namespace relsurf
