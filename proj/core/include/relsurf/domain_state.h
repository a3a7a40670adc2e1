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

#ifndef RELSURF_DOMAIN_STATE_H_
#define RELSURF_DOMAIN_STATE_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace relsurf {

enum class Domain { kScheduling, kTravel, kSupport, kEcommerce };

std::string_view DomainName(Domain d);
Domain ParseDomain(std::string_view name);  // throws ConfigError

// --- scheduling ------------------------------------------------------------

struct SchedulingState {
  // date (YYYY-MM-DD) -> time (HH:MM) -> topic
  std::map<std::string, std::map<std::string, std::string>> calendar;

  bool operator==(const SchedulingState&) const = default;
};

// --- travel ----------------------------------------------------------------

struct FlightRec {
  std::string id;
  std::string origin;
  std::string dest;
  std::string date;
  double price = 0.0;
  int seats_left = 0;

  bool operator==(const FlightRec&) const = default;
};

enum class ReservationStatus { kHeld, kConfirmed };

struct Reservation {
  std::string passenger;
  ReservationStatus status = ReservationStatus::kHeld;
  std::string payment_info;

  bool operator==(const Reservation&) const = default;
};

struct TravelState {
  std::vector<FlightRec> flights_db;
  std::set<std::string> holds;
  std::map<std::string, Reservation> reservations;  // keyed by flight id

  const FlightRec* FindFlight(std::string_view id) const;
  FlightRec* FindFlight(std::string_view id);

  bool operator==(const TravelState&) const = default;
};

// --- support ---------------------------------------------------------------

enum class TicketStatus { kOpen, kEscalated, kClosed };

struct TicketRec {
  std::string ticket_id;
  std::string customer_id;
  std::string subject;
  std::string description;
  std::string priority;
  TicketStatus status = TicketStatus::kOpen;
  std::string resolution;
  std::string escalate_to;
  std::string escalation_reason;
  std::vector<std::string> notes;

  bool operator==(const TicketRec&) const = default;
};

struct KBArticle {
  std::string article_id;
  std::string title;
  std::string category;
  std::string body;

  bool operator==(const KBArticle&) const = default;
};

struct SupportState {
  std::map<std::string, TicketRec> tickets;
  std::vector<KBArticle> kb;
  std::int64_t next_ticket_seq = 1;

  bool operator==(const SupportState&) const = default;
};

// --- ecommerce -------------------------------------------------------------

struct ProductRec {
  std::string sku;
  std::string name;
  std::string category;
  double price = 0.0;

  bool operator==(const ProductRec&) const = default;
};

struct OrderLine {
  std::string sku;
  int qty = 0;
  double unit_price = 0.0;
  bool returned = false;

  bool operator==(const OrderLine&) const = default;
};

enum class OrderStatus { kPlaced, kPartiallyReturned, kReturned };

struct OrderRec {
  std::string order_id;
  std::string customer_id;
  std::vector<OrderLine> lines;
  std::string shipping_address;
  std::string coupon_code;
  double discount_pct = 0.0;
  double subtotal = 0.0;
  double discount = 0.0;
  double total = 0.0;
  OrderStatus status = OrderStatus::kPlaced;
  std::string return_reason;
  std::string refund_method;

  bool operator==(const OrderRec&) const = default;
};

struct Coupon {
  double discount_pct = 0.0;  // percent, e.g. 10 for 10%
  double min_subtotal = 0.0;

  bool operator==(const Coupon&) const = default;
};

struct EcommerceState {
  std::vector<ProductRec> catalog;
  std::map<std::string, int> inventory;
  std::map<std::string, OrderRec> orders;
  std::map<std::string, Coupon> coupons;
  std::int64_t next_order_seq = 1;

  const ProductRec* FindProduct(std::string_view sku) const;

  bool operator==(const EcommerceState&) const = default;
};

// Tagged union over the four worlds; the alternative index matches Domain.
using DomainState =
    std::variant<SchedulingState, TravelState, SupportState, EcommerceState>;

Domain DomainOf(const DomainState& state);
DomainState EmptyState(Domain d);

// Returns an empty string when the state satisfies its domain invariants,
// otherwise a description of the first violation.
std::string CheckStateInvariants(const DomainState& state);

std::string_view ToString(ReservationStatus s);
std::string_view ToString(TicketStatus s);
std::string_view ToString(OrderStatus s);

nlohmann::json StateToJson(const DomainState& state);
DomainState StateFromJson(const nlohmann::json& j);  // throws ValidationError

}  // namespace relsurf

#endif  // RELSURF_DOMAIN_STATE_H_
