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

#include "relsurf/chaos.h"

#include <algorithm>
#include <cmath>

#include "relsurf/errors.h"
#include "relsurf/result_text.h"

namespace relsurf {

FaultType DescribeFault(FaultId id, bool empty_response_explicit) {
  using K = FaultKind;
  switch (id) {
    case FaultId::kTransientTimeout: return {id, true, K::kExplicitError};
    case FaultId::kConnectionReset: return {id, true, K::kExplicitError};
    case FaultId::kHighLatency: return {id, true, K::kModifiedResponse};
    case FaultId::kSoftRateLimit: return {id, true, K::kExplicitError};
    case FaultId::kHardRateLimit: return {id, false, K::kExplicitError};
    case FaultId::kPartialResponse: return {id, true, K::kModifiedResponse};
    case FaultId::kSchemaDrift: return {id, false, K::kModifiedResponse};
    case FaultId::kStaleData: return {id, false, K::kModifiedResponse};
    case FaultId::kEmptyResponse:
      return {id, true, empty_response_explicit ? K::kExplicitError : K::kModifiedResponse};
    case FaultId::kCascadingFailure: return {id, true, K::kExplicitError};
  }
  return {id, true, K::kExplicitError};
}

const std::map<std::string, std::string, std::less<>>& SchemaDriftMap() {
  static const std::map<std::string, std::string, std::less<>> kMap = {
      {"price", "cost"},         {"seats_left", "availability"},
      {"status", "state"},       {"topic", "title"},
      {"stock", "quantity_on_hand"}, {"discount", "reduction"},
      {"total", "amount_due"},
  };
  return kMap;
}

// --- profiles ----------------------------------------------------------------

namespace {

using W = std::vector<std::pair<FaultId, double>>;

FaultProfile Make(std::string name, double level, double rate, W weights) {
  std::sort(weights.begin(), weights.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return {std::move(name), level, rate, std::move(weights)};
}

}  // namespace

FaultProfile BuildProfile(double lambda_level) {
  if (std::fabs(lambda_level - 0.0) < 1e-12) return Make("baseline", 0.0, 0.0, {});
  if (std::fabs(lambda_level - 0.1) < 1e-12) {
    return Make("light", 0.1, 0.075,
                {{FaultId::kTransientTimeout, 0.4},
                 {FaultId::kHighLatency, 0.3},
                 {FaultId::kEmptyResponse, 0.3}});
  }
  if (std::fabs(lambda_level - 0.2) < 1e-12) {
    return Make("medium", 0.2, 0.175,
                {{FaultId::kTransientTimeout, 0.25},
                 {FaultId::kSoftRateLimit, 0.25},
                 {FaultId::kPartialResponse, 0.2},
                 {FaultId::kSchemaDrift, 0.15},
                 {FaultId::kStaleData, 0.15}});
  }
  if (std::fabs(lambda_level - 0.3) < 1e-12) {
    return Make("heavy", 0.3, 0.275,
                {{FaultId::kTransientTimeout, 0.15},
                 {FaultId::kConnectionReset, 0.15},
                 {FaultId::kHardRateLimit, 0.15},
                 {FaultId::kPartialResponse, 0.15},
                 {FaultId::kSchemaDrift, 0.2},
                 {FaultId::kCascadingFailure, 0.2}});
  }
  throw ConfigError("no fault profile for lambda " + std::to_string(lambda_level));
}

FaultProfile BuildProfile(AblationProfile ablation) {
  switch (ablation) {
    case AblationProfile::kTimeoutOnly:
      return Make("timeout_only", 0.2, 0.175, {{FaultId::kTransientTimeout, 1.0}});
    case AblationProfile::kRateLimitOnly:
      return Make("rate_limit_only", 0.2, 0.175, {{FaultId::kSoftRateLimit, 1.0}});
    case AblationProfile::kPartialOnly:
      return Make("partial_only", 0.2, 0.175, {{FaultId::kPartialResponse, 1.0}});
    case AblationProfile::kMixed: {
      FaultProfile p = BuildProfile(0.2);
      p.name = "mixed";
      return p;
    }
  }
  throw ConfigError("unknown ablation profile");
}

FaultProfile BuildProfileByName(std::string_view name) {
  if (name == "baseline") return BuildProfile(0.0);
  if (name == "light") return BuildProfile(0.1);
  if (name == "medium") return BuildProfile(0.2);
  if (name == "heavy") return BuildProfile(0.3);
  if (auto a = ParseAblationProfile(name)) return BuildProfile(*a);
  throw ConfigError("unknown fault profile '" + std::string(name) + "'");
}

std::string CheckProfileInvariants(const FaultProfile& p) {
  if (!(p.failure_rate >= 0.0 && p.failure_rate <= 1.0)) return "failure_rate outside [0,1]";
  double sum = 0.0;
  for (std::size_t i = 0; i < p.fault_weights.size(); ++i) {
    const auto& [id, w] = p.fault_weights[i];
    if (!(w > 0.0)) return "non-positive weight for " + std::string(ToString(id));
    if (i > 0 && !(p.fault_weights[i - 1].first < id)) {
      return "weights not in canonical order or duplicated";
    }
    sum += w;
  }
  if (p.failure_rate > 0.0 && std::fabs(sum - 1.0) > 1e-9) return "weights do not sum to 1";
  return {};
}

FaultProfile ProfileFromJson(const nlohmann::json& j, std::string name, double lambda_level) {
  if (!j.is_object()) throw ConfigError("fault profile must be an object");
  for (const auto& [key, _] : j.items()) {
    if (key != "failure_rate" && key != "fault_weights") {
      throw ConfigError("unknown fault profile key '" + key + "'");
    }
  }
  W weights;
  double rate = 0.0;
  try {
    rate = j.at("failure_rate").get<double>();
    if (j.contains("fault_weights")) {
      for (const auto& [fault, w] : j["fault_weights"].items()) {
        auto id = ParseFaultId(fault);
        if (!id) throw ConfigError("unknown fault '" + fault + "'");
        weights.emplace_back(*id, w.get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad fault profile: ") + e.what());
  }
  FaultProfile p = Make(std::move(name), lambda_level, rate, std::move(weights));
  if (auto problem = CheckProfileInvariants(p); !problem.empty()) throw ConfigError(problem);
  return p;
}

nlohmann::json ProfileToJson(const FaultProfile& p) {
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [id, weight] : p.fault_weights) w[std::string(ToString(id))] = weight;
  return {{"failure_rate", p.failure_rate}, {"fault_weights", w}};
}

std::optional<FaultId> SelectFault(const FaultProfile& profile, double rate, double u_fire,
                                   double u_pick) {
  if (profile.fault_weights.empty() || !(u_fire < rate)) return std::nullopt;
  double total = 0.0;
  for (const auto& [_, w] : profile.fault_weights) total += w;
  double target = u_pick * total;
  for (const auto& [id, w] : profile.fault_weights) {
    if (target < w) return id;
    target -= w;
  }
  return profile.fault_weights.back().first;
}

std::optional<FaultId> SelectFault(const FaultProfile& profile, Rng& rng) {
  const double u_fire = rng.Uniform();
  const double u_pick = rng.Uniform();
  return SelectFault(profile, profile.failure_rate, u_fire, u_pick);
}

// --- injector ----------------------------------------------------------------

namespace {

std::string CallKey(std::string_view tool, const ToolArgs& args) {
  return std::string(tool) + '\x1f' + args.dump();
}

std::string Truncate(const std::string& text) {
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) starts.push_back(i);
  }
  const std::size_t keep = starts.size() / 2;
  const std::size_t bytes = keep < starts.size() ? starts[keep] : text.size();
  return text.substr(0, bytes) + std::string(kTruncationMarker);
}

std::string ExplicitText(FaultId id, std::string_view tool) {
  switch (id) {
    case FaultId::kTransientTimeout:
      return ResultBuilder("error", "timeout")
          .Add("tool", tool)
          .Add("message", "request timed out after 30000 ms")
          .Add("retryable", "true")
          .str();
    case FaultId::kConnectionReset:
      return ResultBuilder("error", "connection_reset")
          .Add("tool", tool)
          .Add("message", "connection reset by peer")
          .Add("retryable", "true")
          .str();
    case FaultId::kSoftRateLimit:
      return ResultBuilder("error", "rate_limited")
          .Add("code", 429)
          .Add("tool", tool)
          .Add("message", "too many requests")
          .Add("retry_after_turns", 1)
          .str();
    case FaultId::kHardRateLimit:
      return ResultBuilder("error", "forbidden")
          .Add("code", 403)
          .Add("tool", tool)
          .Add("message", "quota exhausted for this tool")
          .Add("retryable", "false")
          .str();
    case FaultId::kEmptyResponse:
      return ResultBuilder("error", "empty_response")
          .Add("tool", tool)
          .Add("message", "upstream returned no data")
          .Add("retryable", "true")
          .str();
    case FaultId::kCascadingFailure:
      return ResultBuilder("error", "service_unavailable")
          .Add("code", 503)
          .Add("tool", tool)
          .Add("message", "dependent service failing")
          .Add("retryable", "true")
          .str();
    default:
      return ResultBuilder("error", "fault").Add("tool", tool).str();
  }
}

}  // namespace

FaultedCall ExecuteWithFaults(std::string_view tool, const ToolArgs& args, DomainState& state,
                              const FaultProfile& profile, EpisodeFaultContext& ctx,
                              Rng& rng) {
  // Two draws per call whatever happens, so fault streams stay aligned
  // across profiles.
  const double u_fire = rng.Uniform();
  const double u_pick = rng.Uniform();

  const std::size_t index = ctx.call_index++;
  ctx.call_tools.emplace_back(tool);
  const std::size_t occurrence = ctx.calls_per_tool[std::string(tool)]++;
  const std::string key = CallKey(tool, args);

  double rate = profile.failure_rate;
  if (ctx.cascade_remaining > 0) {
    rate = std::min(0.9, rate * 3.0);
    ctx.cascade_remaining--;
  }

  std::optional<FaultId> fault;
  bool repeat = false;  // continuation of a fault that already fired
  bool exempt = false;
  if (ctx.hard_limited.count(tool)) {
    fault = FaultId::kHardRateLimit;
    repeat = true;
  } else if (auto it = ctx.soft_limited_until.find(tool); it != ctx.soft_limited_until.end()) {
    if (ctx.turn < it->second) {
      fault = FaultId::kSoftRateLimit;
      repeat = true;
    } else {
      ctx.soft_limited_until.erase(it);
      exempt = true;
    }
  }
  if (!fault && !exempt) {
    for (auto f = ctx.forced.begin(); f != ctx.forced.end(); ++f) {
      const bool match = f->tool.empty() ? f->occurrence == index
                                         : (f->tool == tool && f->occurrence == occurrence);
      if (match) {
        fault = f->fault;
        ctx.forced.erase(f);
        break;
      }
    }
  }
  if (!fault && !exempt && ctx.retry_cooldown.erase(key)) exempt = true;
  if (!fault && !exempt && ctx.stale_keys.count(key)) {
    fault = FaultId::kStaleData;
    repeat = true;
  }
  if (!fault && !exempt) fault = SelectFault(profile, rate, u_fire, u_pick);

  ctx.simulated_ms += kBaseToolLatencyMs;
  FaultedCall out;
  const bool drifted = ctx.drifted.count(tool) > 0;

  if (fault && DescribeFault(*fault, ctx.empty_response_explicit).kind ==
                   FaultKind::kExplicitError) {
    out.result_text = ExplicitText(*fault, tool);
    out.is_explicit = true;
    if (!repeat) {
      switch (*fault) {
        case FaultId::kTransientTimeout:
          ctx.simulated_ms += kTimeoutLatencyMs;
          ctx.retry_cooldown.insert(key);
          break;
        case FaultId::kConnectionReset:
        case FaultId::kEmptyResponse:
          ctx.retry_cooldown.insert(key);
          break;
        case FaultId::kSoftRateLimit:
          ctx.soft_limited_until[std::string(tool)] = ctx.turn + 2;
          break;
        case FaultId::kHardRateLimit:
          ctx.hard_limited.insert(std::string(tool));
          break;
        case FaultId::kCascadingFailure:
          ctx.cascade_remaining = 3;
          break;
        default:
          break;
      }
    }
  } else {
    std::string text = ApplyTool(state, tool, args);
    if (fault) {
      switch (*fault) {
        case FaultId::kPartialResponse:
          text = Truncate(drifted ? RenameKeys(text, SchemaDriftMap()) : text);
          break;
        case FaultId::kSchemaDrift:
          ctx.drifted.insert(std::string(tool));
          text = RenameKeys(text, SchemaDriftMap());
          break;
        case FaultId::kStaleData: {
          ctx.stale_keys.insert(key);
          DomainState copy = ctx.snapshot;
          text = ApplyTool(copy, tool, args);
          if (drifted) text = RenameKeys(text, SchemaDriftMap());
          break;
        }
        case FaultId::kHighLatency:
          ctx.simulated_ms += kHighLatencyMs;
          if (drifted) text = RenameKeys(text, SchemaDriftMap());
          text += " latency_ms=" + std::to_string(kHighLatencyMs);
          break;
        case FaultId::kEmptyResponse:
          text.clear();
          break;
        default:
          break;
      }
    } else if (drifted) {
      // Drift persists: later responses from this tool keep the new keys.
      text = RenameKeys(text, SchemaDriftMap());
      fault = FaultId::kSchemaDrift;
    }
    out.result_text = std::move(text);
    // The request got through, so earlier explicit failures of this tool
    // count as recovered.
    for (auto& e : ctx.events) {
      if (e.was_explicit && !e.recovered && ctx.call_tools[e.tool_call_index] == tool) {
        e.recovered = true;
      }
    }
  }

  out.fault = fault;
  if (fault) {
    FaultEvent ev{index, *fault, out.is_explicit, false};
    ctx.events.push_back(ev);
    out.event = ev;
  }
  return out;
}

// --- session -----------------------------------------------------------------

DomainSession::DomainSession(const TaskSpec& task, FaultProfile profile,
                             std::uint64_t episode_seed, SessionOptions options)
    : domain_(task.domain),
      state_(task.initial_state),
      profile_(std::move(profile)),
      ctx_(task.initial_state),
      rng_(episode_seed, RngStream::kFaults) {
  for (const auto& spec : ToolCatalog(domain_)) {
    if (task.tool_set.empty() ||
        std::find(task.tool_set.begin(), task.tool_set.end(), spec.name) !=
            task.tool_set.end()) {
      catalog_.push_back(spec);
    }
  }
  ctx_.forced = std::move(options.forced);
  ctx_.empty_response_explicit = options.empty_response_explicit;
}

DomainSession::CallOutcome DomainSession::Call(std::string_view tool, const ToolArgs& args) {
  CallOutcome out;
  auto spec = std::find_if(catalog_.begin(), catalog_.end(),
                           [&](const ToolSpec& s) { return s.name == tool; });
  if (spec == catalog_.end()) {
    out.observation = "invalid arguments: unknown tool '" + std::string(tool) + "'";
    return out;
  }
  if (auto problem = ValidateArgs(*spec, args)) {
    out.observation = "invalid arguments: " + *problem;
    return out;
  }
  FaultedCall fc = ExecuteWithFaults(tool, args, state_, profile_, ctx_, rng_);
  ToolCallRecord rec;
  rec.index = calls_.size();
  rec.tool_name = std::string(tool);
  rec.args = args;
  rec.result_text = fc.result_text;
  rec.fault_annotation = fc.fault;
  rec.is_explicit_fault = fc.is_explicit;
  calls_.push_back(std::move(rec));
  out.executed = true;
  out.observation = std::move(fc.result_text);
  out.fault = fc.fault;
  out.explicit_fault = fc.is_explicit;
  return out;
}

DomainState ReplayToolCalls(const DomainState& initial,
                            const std::vector<ToolCallRecord>& calls) {
  DomainState state = initial;
  for (const auto& c : calls) {
    if (!c.is_explicit_fault) ApplyTool(state, c.tool_name, c.args);
  }
  return state;
}

}  // namespace relsurf
