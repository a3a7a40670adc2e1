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

#ifndef RELSURF_CONFIG_H_
#define RELSURF_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace relsurf {

struct PriceRate {
  double usd_per_1m_input = 0.0;
  double usd_per_1m_output = 0.0;
};

using PriceTable = std::map<std::string, PriceRate, std::less<>>;

// December 2024 list prices for the two reference backends.
PriceTable DefaultPriceTable();

// tokens/1e6 * rate per direction. Throws ConfigError for unknown models or
// negative token counts.
double ComputeCost(std::int64_t tokens_in, std::int64_t tokens_out,
                   std::string_view model_id, const PriceTable& prices);

enum class AblationProfile { kTimeoutOnly, kRateLimitOnly, kPartialOnly, kMixed };

std::string_view ToString(AblationProfile p);
std::optional<AblationProfile> ParseAblationProfile(std::string_view name);

struct RunConfig {
  std::string suite_id = "default";
  int k_trials = 2;
  std::vector<double> epsilon_levels = {0.0, 0.1, 0.2};
  std::vector<double> lambda_levels = {0.0, 0.2};
  std::vector<std::string> agent_ids = {"react", "reflexion"};
  std::string model_id = "gemini-2.0-flash";
  std::uint64_t global_seed = 0;
  int max_turns_per_episode = 20;
  double theta = 0.85;
  PriceTable price_table = DefaultPriceTable();
  std::optional<AblationProfile> ablation_profile;

  // Knobs beyond the experiment grid.
  std::optional<double> temperature;  // unset: backend default
  int max_reflections = 2;
  bool reperturb_per_trial = false;
  bool empty_response_explicit = true;
  double stub_slip_rate = 0.0;
};

// Rejects unknown keys, out-of-range values and unsupported axis levels.
RunConfig ParseRunConfig(const nlohmann::json& j);
RunConfig LoadRunConfig(const std::filesystem::path& path);
nlohmann::json RunConfigToJson(const RunConfig& config);
void ValidateRunConfig(const RunConfig& config);

// |tasks| x |eps| x |lambda| x |agents| x k
std::size_t ExpectedEpisodeCount(const RunConfig& config, std::size_t num_tasks);

// The four perturbation / fault levels the harness supports.
bool IsSupportedLevel(double level);

}  // namespace relsurf

#endif  // RELSURF_CONFIG_H_
