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
#include <cctype>
#include <cmath>

#include "domains_internal.h"
#include "relsurf/domains.h"
#include "relsurf/result_text.h"

namespace relsurf {
namespace internal {

std::string ArgStr(const ToolArgs& args, std::string_view name) {
  if (!args.is_object()) return {};
  auto it = args.find(name);
  if (it == args.end() || it->is_null()) return {};
  if (it->is_string()) return TrimCopy(it->get<std::string>());
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  if (it->is_number()) return FormatAmount(it->get<double>());
  if (it->is_boolean()) return it->get<bool>() ? "true" : "false";
  return it->dump();
}

std::optional<double> ArgNum(const ToolArgs& args, std::string_view name) {
  if (!args.is_object()) return std::nullopt;
  auto it = args.find(name);
  if (it == args.end() || it->is_null()) return std::nullopt;
  if (it->is_number()) return it->get<double>();
  if (it->is_string()) {
    std::string s = TrimCopy(it->get<std::string>());
    if (!s.empty() && s[0] == '$') s.erase(0, 1);
    if (s.empty()) return std::nullopt;
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used == s.size() && std::isfinite(v)) return v;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string TrimCopy(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string NormalizeText(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : TrimCopy(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  // A trailing period is punctuation, not content.
  while (!out.empty() && (out.back() == '.' || out.back() == '!')) out.pop_back();
  return out;
}

bool NaturalIdLess(std::string_view a, std::string_view b) {
  auto split = [](std::string_view s) {
    std::size_t i = s.size();
    while (i > 0 && std::isdigit(static_cast<unsigned char>(s[i - 1]))) --i;
    return std::pair{s.substr(0, i), s.substr(i)};
  };
  auto [pa, na] = split(a);
  auto [pb, nb] = split(b);
  if (pa != pb) return pa < pb;
  if (na.size() != nb.size()) return na.size() < nb.size();
  return na < nb;
}

std::string ErrorText(std::string_view verb, std::string_view reason) {
  return ResultBuilder("error", verb).Add("reason", reason).str();
}

std::vector<std::size_t> Sample(Rng& rng, std::size_t size, std::size_t n) {
  std::vector<std::size_t> pool(size);
  for (std::size_t i = 0; i < size; ++i) pool[i] = i;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n && !pool.empty(); ++i) {
    std::size_t j = rng.Below(pool.size());
    out.push_back(pool[j]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return out;
}

}  // namespace internal

std::string_view ToString(ParamType t) {
  switch (t) {
    case ParamType::kStr: return "string";
    case ParamType::kFloat: return "number";
    case ParamType::kDictList: return "array<object>";
    case ParamType::kStrList: return "array<string>";
  }
  return "?";
}

namespace {

using P = ParamSpec;
constexpr ParamType S = ParamType::kStr;
constexpr ParamType F = ParamType::kFloat;

std::vector<ToolSpec> BuildCatalog(Domain d) {
  switch (d) {
    case Domain::kScheduling:
      return {
          {"book_meeting", d, "Books a meeting on the specified date and time.",
           {P{"date", S}, P{"time", S}, P{"topic", S}}, false},
          {"check_calendar", d, "Returns all meetings scheduled for the given date.",
           {P{"date", S}}, true},
          {"cancel_meeting", d, "Cancels the meeting at the specified slot.",
           {P{"date", S}, P{"time", S}}, false},
          {"list_meetings", d, "Lists all meetings in the date range.",
           {P{"start_date", S}, P{"end_date", S}}, true},
      };
    case Domain::kTravel:
      return {
          {"search_flights", d, "Searches for available flights.",
           {P{"origin", S}, P{"dest", S}, P{"date", S}}, true},
          {"hold_flight", d, "Places a temporary hold on a flight.", {P{"flight_id", S}},
           false},
          {"confirm_booking", d, "Confirms a held flight booking.",
           {P{"flight_id", S}, P{"passenger", S}, P{"payment_info", S}}, false},
          {"get_itinerary", d, "Returns current reservations.", {}, true},
      };
    case Domain::kSupport:
      return {
          {"create_ticket", d, "Creates a new support ticket.",
           {P{"customer_id", S}, P{"subject", S}, P{"description", S, false},
            P{"priority", S}},
           false},
          {"update_ticket", d, "Updates ticket fields.",
           {P{"ticket_id", S}, P{"status", S, false}, P{"priority", S, false},
            P{"note", S, false}},
           false},
          {"close_ticket", d, "Closes a ticket with resolution summary.",
           {P{"ticket_id", S}, P{"resolution", S}}, false},
          {"escalate_ticket", d, "Escalates ticket to higher tier.",
           {P{"ticket_id", S}, P{"reason", S, false}, P{"escalate_to", S}}, false},
          {"search_knowledge_base", d, "Searches KB for relevant articles.",
           {P{"query", S}, P{"category", S, false}}, true},
          {"list_open_tickets", d, "Lists open tickets with optional filters.",
           {P{"priority", S, false}, P{"customer_id", S, false}}, true},
      };
    case Domain::kEcommerce:
      return {
          {"search_products", d, "Searches product catalog with filters.",
           {P{"query", S, false}, P{"category", S, false}, P{"min_price", F, false},
            P{"max_price", F, false}},
           true},
          {"check_inventory", d, "Checks inventory for a specific product.",
           {P{"sku", S}}, true},
          {"create_order", d, "Creates a new order.",
           {P{"customer_id", S}, P{"items", ParamType::kDictList},
            P{"shipping_address", S}, P{"coupon_code", S, false}},
           false},
          {"check_order_status", d, "Returns order details and status.",
           {P{"order_id", S}}, true},
          {"process_return", d, "Processes a product return.",
           {P{"order_id", S}, P{"items", ParamType::kStrList},
            P{"reason", S, false}, P{"refund_method", S, false}},
           false},
          {"apply_coupon", d, "Validates and calculates coupon discount.",
           {P{"code", S}, P{"order_subtotal", F}}, true},
      };
  }
  return {};
}

}  // namespace

const std::vector<ToolSpec>& ToolCatalog(Domain domain) {
  static const std::vector<ToolSpec> kCatalogs[4] = {
      BuildCatalog(Domain::kScheduling), BuildCatalog(Domain::kTravel),
      BuildCatalog(Domain::kSupport), BuildCatalog(Domain::kEcommerce)};
  return kCatalogs[static_cast<int>(domain)];
}

const ToolSpec* FindTool(Domain domain, std::string_view name) {
  for (const auto& t : ToolCatalog(domain)) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

std::optional<std::string> ValidateArgs(const ToolSpec& spec, const ToolArgs& args) {
  if (!args.is_object()) return "arguments must be a JSON object";
  for (const auto& [key, _] : args.items()) {
    auto it = std::find_if(spec.params.begin(), spec.params.end(),
                           [&](const ParamSpec& p) { return p.name == key; });
    if (it == spec.params.end()) {
      return "unexpected argument '" + key + "' for " + spec.name;
    }
  }
  for (const auto& p : spec.params) {
    auto it = args.find(p.name);
    if (it == args.end() || it->is_null()) {
      if (p.required) return "missing required argument '" + p.name + "'";
      continue;
    }
    switch (p.type) {
      case ParamType::kStr:
        if (!it->is_string() && !it->is_number()) {
          return "argument '" + p.name + "' must be a string";
        }
        break;
      case ParamType::kFloat:
        if (!internal::ArgNum(args, p.name)) {
          return "argument '" + p.name + "' must be a number";
        }
        break;
      case ParamType::kDictList:
        if (!it->is_array()) return "argument '" + p.name + "' must be a list of objects";
        for (const auto& e : *it) {
          if (!e.is_object()) return "argument '" + p.name + "' must be a list of objects";
        }
        break;
      case ParamType::kStrList:
        if (!it->is_array()) return "argument '" + p.name + "' must be a list of strings";
        for (const auto& e : *it) {
          if (!e.is_string()) return "argument '" + p.name + "' must be a list of strings";
        }
        break;
    }
  }
  return std::nullopt;
}

nlohmann::json CatalogToJson(Domain domain) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : ToolCatalog(domain)) {
    nlohmann::json params = nlohmann::json::array();
    for (const auto& p : t.params) {
      params.push_back({{"name", p.name}, {"type", ToString(p.type)}, {"required", p.required}});
    }
    out.push_back({{"name", t.name},
                   {"description", t.description},
                   {"parameters", params},
                   {"read_only", t.read_only}});
  }
  return out;
}

std::string ApplyTool(DomainState& state, std::string_view tool, const ToolArgs& args) {
  const Domain d = DomainOf(state);
  const ToolSpec* spec = FindTool(d, tool);
  if (!spec) {
    return ResultBuilder("error", "unknown_tool").Add("name", tool).str();
  }
  if (auto problem = ValidateArgs(*spec, args)) {
    return ResultBuilder("error", "invalid_arguments").Add("reason", *problem).str();
  }
  return std::visit(
      [&](auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, SchedulingState>) {
          return internal::ApplyScheduling(s, tool, args);
        } else if constexpr (std::is_same_v<T, TravelState>) {
          return internal::ApplyTravel(s, tool, args);
        } else if constexpr (std::is_same_v<T, SupportState>) {
          return internal::ApplySupport(s, tool, args);
        } else {
          return internal::ApplyEcommerce(s, tool, args);
        }
      },
      state);
}

}  // namespace relsurf
