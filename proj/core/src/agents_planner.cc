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

#include <optional>
#include <string>
#include <vector>

#include "domains_internal.h"
#include "relsurf/agents.h"
#include "relsurf/result_text.h"

namespace relsurf {

using internal::NaturalIdLess;
using internal::NormalizeText;

namespace {

constexpr const char* kPaymentInfo = "VISA-4242";
constexpr int kMaxWaitsPerStep = 6;
constexpr int kMaxRepairs = 2;

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Field lookup that also accepts the drifted key name.
std::optional<std::string> Lookup(const Fields& fields, std::string_view key) {
  if (auto v = FieldValue(fields, key)) return v;
  const auto& drift = SchemaDriftMap();
  if (auto it = drift.find(key); it != drift.end()) return FieldValue(fields, it->second);
  return std::nullopt;
}

std::optional<std::string> Lookup(const ParsedResult& r, std::string_view key) {
  return Lookup(r.summary, key);
}

std::optional<double> ToNumber(const std::optional<std::string>& v) {
  if (!v) return std::nullopt;
  try {
    std::size_t used = 0;
    double d = std::stod(*v, &used);
    if (used != v->size()) return std::nullopt;
    return d;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

bool IsTransientError(std::string_view obs) {
  return StartsWith(obs, "error: timeout") || StartsWith(obs, "error: connection_reset") ||
         StartsWith(obs, "error: empty_response") ||
         StartsWith(obs, "error: service_unavailable");
}

}  // namespace

struct OraclePlanner::Impl {
  enum class Purpose { kPlain, kReadbackCreate, kReadbackClose };

  struct Step {
    std::string tool;
    ToolArgs args = ToolArgs::object();
    bool critical = true;
    bool write = false;
    Purpose purpose = Purpose::kPlain;
  };

  TaskSpec task;
  RetryPolicy policy;
  std::vector<Step> steps;
  std::size_t index = 0;
  int attempts = 0;
  int waits = 0;
  int repairs = 0;
  bool awaiting = false;
  std::optional<std::string> final_text;
  std::string ticket_id;

  Impl(const TaskSpec& t, RetryPolicy p) : task(t), policy(p) { BuildPlan(); }

  const std::string& Goal(std::string_view role) const { return task.goal_meta.Get(role); }
  const std::string& kind() const { return task.goal_meta.kind; }

  void BuildPlan() {
    if (kind() == "sched_booked" || kind() == "sched_conflict") {
      steps.push_back({"book_meeting",
                       {{"date", Goal("date")}, {"time", Goal("time")}, {"topic", Goal("topic")}},
                       true, true});
    } else if (kind() == "travel_direct") {
      AddBooking(Goal("flight_id"));
    } else if (kind() == "travel_cheapest") {
      steps.push_back({"search_flights",
                       {{"origin", Goal("origin")}, {"dest", Goal("dest")}, {"date", Goal("date")}},
                       true, false});
    } else if (kind() == "support_create_close") {
      steps.push_back({"create_ticket",
                       {{"customer_id", Goal("customer_id")},
                        {"subject", Goal("subject")},
                        {"priority", Goal("priority")}},
                       true, true});
    } else if (kind() == "support_escalate") {
      steps.push_back({"search_knowledge_base", {{"query", Goal("kb_query")}}, false, false});
      steps.push_back({"escalate_ticket",
                       {{"ticket_id", Goal("ticket_id")},
                        {"escalate_to", Goal("escalate_to")},
                        {"reason", "needs " + Goal("escalate_to") + " review"}},
                       true, true});
    } else if (kind() == "ecom_order") {
      AddOrder(Goal("sku"), std::stoi(Goal("qty")), std::nullopt);
    } else if (kind() == "ecom_cheapest_coupon") {
      steps.push_back({"search_products", {{"category", Goal("category")}}, true, false});
    } else {
      final_text = "FINAL: FAILED no plan for task kind " + kind();
    }
  }

  void AddBooking(const std::string& flight_id) {
    steps.push_back({"hold_flight", {{"flight_id", flight_id}}, true, true});
    steps.push_back({"confirm_booking",
                     {{"flight_id", flight_id},
                      {"passenger", Goal("passenger")},
                      {"payment_info", kPaymentInfo}},
                     true, true});
  }

  void AddOrder(const std::string& sku, int qty, std::optional<std::string> coupon) {
    ToolArgs args = {{"customer_id", Goal("customer_id")},
                     {"items", nlohmann::json::array({{{"sku", sku}, {"qty", qty}}})},
                     {"shipping_address", Goal("address")}};
    if (coupon) args["coupon_code"] = *coupon;
    steps.push_back({"create_order", std::move(args), true, true});
  }

  void Advance() {
    index++;
    attempts = 0;
    waits = 0;
  }

  Action Fail(const std::string& reason) {
    final_text = "FINAL: FAILED " + reason;
    return Action::Finish(*final_text);
  }

  // Same call again, unless the retry budget is spent.
  std::optional<Action> Retry(const std::string& why) {
    if (++attempts <= policy.max_retries) return std::nullopt;
    if (steps[index].critical) return Fail(steps[index].tool + " kept failing: " + why);
    Advance();
    return std::nullopt;
  }

  std::optional<Action> Handle(const std::string& obs) {
    Step& step = steps[index];
    if (StartsWith(obs, "error: rate_limited")) {
      if (++waits > kMaxWaitsPerStep) return Fail(step.tool + " stayed rate limited");
      return Action::Wait("Rate limited on " + step.tool + "; waiting one turn before retrying.");
    }
    if (StartsWith(obs, "error: forbidden")) {
      if (step.critical) return Fail(step.tool + " is forbidden by the service");
      Advance();
      return std::nullopt;
    }
    if (IsTransientError(obs)) return Retry("transient error");
    const bool unclear = obs.empty() || obs.find(kTruncationMarker) != std::string::npos;
    if (unclear) {
      // A cut-off error still left the state untouched.
      if (!step.write || StartsWith(obs, "error:")) return Retry("incomplete response");
      return OnUnclearWrite();
    }
    auto parsed = ParseResult(obs);
    if (!parsed) return Retry("unreadable response");
    return OnResult(*parsed);
  }

  // The write went through but its response cannot be read.
  std::optional<Action> OnUnclearWrite() {
    if (steps[index].tool == "create_ticket") {
      steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(index) + 1,
                   Step{"list_open_tickets", {{"customer_id", Goal("customer_id")}}, true, false,
                        Purpose::kReadbackCreate});
    }
    Advance();
    return std::nullopt;
  }

  std::optional<Action> OnResult(const ParsedResult& r) {
    Step& step = steps[index];
    const bool error = r.status == "error";
    const std::string& tool = step.tool;

    if (tool == "book_meeting") {
      if (!error) return Done();
      if (r.verb == "conflict") {
        auto existing = Lookup(r, "topic");
        if (existing && NormalizeText(*existing) == NormalizeText(Goal("topic"))) return Done();
        if (kind() == "sched_conflict" && step.args["time"] != Goal("alt_time")) {
          step.args["time"] = Goal("alt_time");
          attempts = 0;
          return std::nullopt;
        }
        return Fail("the requested slot is taken");
      }
      return Retry(r.verb);
    }
    if (tool == "search_flights") {
      if (error) return Retry(r.verb);
      const Fields* best = nullptr;
      double best_price = 0;
      std::string best_id;
      for (const auto& row : r.rows) {
        auto id = FieldValue(row, "id");
        auto price = ToNumber(Lookup(row, "price"));
        auto seats = ToNumber(Lookup(row, "seats_left"));
        if (!id || !price || !seats || *seats <= 0) continue;
        if (!best || *price < best_price || (*price == best_price && *id < best_id)) {
          best = &row;
          best_price = *price;
          best_id = *id;
        }
      }
      if (!best) return Retry("no bookable flight listed");
      Advance();
      AddBooking(best_id);
      return std::nullopt;
    }
    if (tool == "hold_flight") {
      if (!error) return Done();
      if (r.verb == "already_booked") {
        // A confirmation already landed on an earlier, misreported call.
        index = steps.size();
        return std::nullopt;
      }
      if (r.verb == "unknown_flight" || r.verb == "sold_out") return Fail("cannot hold: " + r.verb);
      return Retry(r.verb);
    }
    if (tool == "confirm_booking") {
      if (!error) return Done();
      if (r.verb == "no_hold" && repairs++ < kMaxRepairs) {
        steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(index),
                     Step{"hold_flight", {{"flight_id", step.args["flight_id"]}}, true, true});
        attempts = 0;
        return std::nullopt;
      }
      if (r.verb == "sold_out" || r.verb == "unknown_flight") return Fail("cannot confirm: " + r.verb);
      return Retry(r.verb);
    }
    if (tool == "create_ticket") {
      if (error) return Retry(r.verb);
      auto id = Lookup(r, "ticket_id");
      if (!id) return OnUnclearWrite();
      ticket_id = *id;
      Advance();
      AddClose();
      return std::nullopt;
    }
    if (tool == "close_ticket") {
      if (!error || r.verb == "already_closed") return Done();
      if (r.verb == "not_found" && repairs++ < kMaxRepairs) {
        steps.insert(steps.begin() + static_cast<std::ptrdiff_t>(index) + 1,
                     Step{"list_open_tickets", {{"customer_id", Goal("customer_id")}}, true, false,
                          Purpose::kReadbackClose});
        Advance();
        return std::nullopt;
      }
      return Retry(r.verb);
    }
    if (tool == "list_open_tickets") {
      if (error) return Retry(r.verb);
      if (step.purpose == Purpose::kReadbackCreate) {
        std::string newest;
        for (const auto& row : r.rows) {
          auto id = FieldValue(row, "ticket_id");
          auto subject = FieldValue(row, "subject");
          if (!id || !subject || NormalizeText(*subject) != NormalizeText(Goal("subject"))) continue;
          if (newest.empty() || NaturalIdLess(newest, *id)) newest = *id;
        }
        if (newest.empty()) return Fail("the new ticket is not listed");
        ticket_id = newest;
        Advance();
        AddClose();
        return std::nullopt;
      }
      if (step.purpose == Purpose::kReadbackClose) {
        for (const auto& row : r.rows) {
          if (FieldValue(row, "ticket_id") == ticket_id) {
            // Still open: go back to the close step.
            steps.erase(steps.begin() + static_cast<std::ptrdiff_t>(index));
            index--;
            attempts = 0;
            waits = 0;
            return std::nullopt;
          }
        }
      }
      return Done();
    }
    if (tool == "search_knowledge_base" || tool == "apply_coupon") {
      return Done();
    }
    if (tool == "escalate_ticket") {
      if (!error) return Done();
      if (r.verb == "ticket_closed" || r.verb == "not_found") return Fail("cannot escalate: " + r.verb);
      return Retry(r.verb);
    }
    if (tool == "search_products") {
      if (error) return Retry(r.verb);
      std::optional<std::string> best_sku;
      double best_price = 0;
      for (const auto& row : r.rows) {
        auto sku = FieldValue(row, "sku");
        auto price = ToNumber(Lookup(row, "price"));
        auto stock = ToNumber(Lookup(row, "stock"));
        if (!sku || !price || !stock || *stock <= 0) continue;
        if (!best_sku || *price < best_price || (*price == best_price && *sku < *best_sku)) {
          best_sku = *sku;
          best_price = *price;
        }
      }
      if (!best_sku) return Retry("no product in stock");
      Advance();
      const std::string& coupon = Goal("coupon");
      steps.push_back({"apply_coupon", {{"code", coupon}, {"order_subtotal", best_price}}, false,
                       false});
      AddOrder(*best_sku, 1, coupon);
      return std::nullopt;
    }
    if (tool == "create_order") {
      if (!error) return Done();
      if (r.verb == "unknown_sku" || r.verb == "insufficient_stock") {
        return Fail("cannot order: " + r.verb);
      }
      return Retry(r.verb);
    }
    return error ? Retry(r.verb) : Done();
  }

  void AddClose() {
    steps.push_back({"close_ticket",
                     {{"ticket_id", ticket_id}, {"resolution", Goal("resolution")}},
                     true, true});
  }

  std::optional<Action> Done() {
    Advance();
    return std::nullopt;
  }

  Action Emit() {
    if (index >= steps.size()) {
      final_text = "FINAL: Completed " + kind() + " for task " + task.task_id + ".";
      return Action::Finish(*final_text);
    }
    awaiting = true;
    const Step& step = steps[index];
    return Action::Call(step.tool, step.args, "Next step: " + step.tool + ".");
  }

  Action Next(const std::optional<std::string>& observation) {
    if (final_text) return Action::Finish(*final_text);
    if (awaiting && observation) {
      awaiting = false;
      if (auto a = Handle(*observation)) {
        if (a->kind == Action::Kind::kWait) awaiting = false;
        return *a;
      }
      if (final_text) return Action::Finish(*final_text);
    }
    return Emit();
  }
};

OraclePlanner::OraclePlanner(const TaskSpec& task, RetryPolicy policy)
    : impl_(std::make_unique<Impl>(task, policy)) {}
OraclePlanner::~OraclePlanner() = default;
OraclePlanner::OraclePlanner(OraclePlanner&&) noexcept = default;
OraclePlanner& OraclePlanner::operator=(OraclePlanner&&) noexcept = default;

Action OraclePlanner::Next(const std::optional<std::string>& observation) {
  return impl_->Next(observation);
}

}  // namespace relsurf
