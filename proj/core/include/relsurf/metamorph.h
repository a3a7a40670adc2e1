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

#ifndef RELSURF_METAMORPH_H_
#define RELSURF_METAMORPH_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "relsurf/domain_state.h"
#include "relsurf/ids.h"
#include "relsurf/records.h"
#include "relsurf/rng.h"
#include "relsurf/task.h"

namespace relsurf {

enum class MrCategory { kLinguistic, kStructural, kContextual, kTemporal };

std::string_view ToString(MrCategory c);
MrCategory CategoryOf(MrId id);

inline constexpr double kMrWeight = 0.05;

struct MRDescriptor {
  MrId id = MrId::kSynonym;
  double weight = kMrWeight;
  MrCategory category = MrCategory::kLinguistic;

  bool operator==(const MRDescriptor&) const = default;
};

// Fixed word lists and templates. The default instance is compiled from
// core/data/lexicon.json.
struct Lexicon {
  int version = 0;
  std::vector<std::pair<std::string, std::string>> synonyms;
  std::map<std::string, std::vector<std::string>> distractors;  // by domain
  std::map<std::string, std::vector<std::string>> templates;    // by task kind
  std::map<std::string, std::string> passive_participles;       // verb -> participle
  std::vector<std::string> prepositions;
  std::vector<std::string> decoy_names;
  std::string correction_template;  // contains {value}
  std::string split_lead;           // starts the detail sentence
  std::string merge_joiner;
};

const Lexicon& DefaultLexicon();
Lexicon LexiconFromJson(const nlohmann::json& j);

// Fills {role} placeholders from the goal entities.
std::string RenderTemplate(std::string_view tmpl, const GoalMeta& goal);

// Optional external rephraser for the Paraphrase relation. Returning nullopt
// falls back to the template bank.
using ParaphraseHook =
    std::function<std::optional<std::string>(std::string_view, const GoalMeta&)>;

struct MrOptions {
  const Lexicon* lexicon = nullptr;  // null: DefaultLexicon()
  ParaphraseHook paraphrase_hook;
};

// Applies one relation. Returns nullopt when the text has no site for it
// (the caller keeps the input unchanged and records it as not applied).
std::optional<std::string> ApplyMr(MrId id, std::string_view description,
                                   const GoalMeta& goal, Rng& rng,
                                   const MrOptions& options = {});

struct PerturbationPlan {
  double epsilon = 0.0;
  std::vector<MRDescriptor> selected_mrs;
  std::uint64_t seed = 0;

  double TotalWeight() const;
};

// Throws ConfigError for epsilon outside {0, 0.1, 0.2, 0.3}.
PerturbationPlan PlanPerturbation(double epsilon, std::uint64_t seed);

struct PerturbedTask {
  TaskSpec task;  // only the description differs from the input
  std::vector<AppliedMr> applied_mrs;
};

PerturbedTask PerturbTask(const TaskSpec& task, double epsilon,
                          std::uint64_t seed, const MrOptions& options = {});

}  // namespace relsurf

#endif  // RELSURF_METAMORPH_H_
