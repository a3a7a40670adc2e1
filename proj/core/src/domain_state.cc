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

#include "relsurf/domain_state.h"

#include <algorithm>

#include "relsurf/errors.h"

namespace relsurf {

using nlohmann::json;

std::string_view DomainName(Domain d) {
  switch (d) {
    case Domain::kScheduling: return "scheduling";
    case Domain::kTravel: return "travel";
    case Domain::kSupport: return "support";
    case Domain::kEcommerce: return "ecommerce";
  }
  return "?";
}

Domain ParseDomain(std::string_view name) {
  for (Domain d : {Domain::kScheduling, Domain::kTravel, Domain::kSupport,
                   Domain::kEcommerce}) {
    if (DomainName(d) == name) return d;
  }
  throw ConfigError("unknown domain '" + std::string(name) + "'");
}

const FlightRec* TravelState::FindFlight(std::string_view id) const {
  auto it = std::find_if(flights_db.begin(), flights_db.end(),
                         [&](const FlightRec& f) { return f.id == id; });
  return it == flights_db.end() ? nullptr : &*it;
}

FlightRec* TravelState::FindFlight(std::string_view id) {
  return const_cast<FlightRec*>(std::as_const(*this).FindFlight(id));
}

const ProductRec* EcommerceState::FindProduct(std::string_view sku) const {
  auto it = std::find_if(catalog.begin(), catalog.end(),
                         [&](const ProductRec& p) { return p.sku == sku; });
  return it == catalog.end() ? nullptr : &*it;
}

Domain DomainOf(const DomainState& state) {
  return static_cast<Domain>(state.index());
}

DomainState EmptyState(Domain d) {
  switch (d) {
    case Domain::kScheduling: return SchedulingState{};
    case Domain::kTravel: return TravelState{};
    case Domain::kSupport: return SupportState{};
    case Domain::kEcommerce: return EcommerceState{};
  }
  return SchedulingState{};
}

std::string_view ToString(ReservationStatus s) {
  return s == ReservationStatus::kHeld ? "held" : "confirmed";
}

std::string_view ToString(TicketStatus s) {
  switch (s) {
    case TicketStatus::kOpen: return "open";
    case TicketStatus::kEscalated: return "escalated";
    case TicketStatus::kClosed: return "closed";
  }
  return "?";
}

std::string_view ToString(OrderStatus s) {
  switch (s) {
    case OrderStatus::kPlaced: return "placed";
    case OrderStatus::kPartiallyReturned: return "partially_returned";
    case OrderStatus::kReturned: return "returned";
  }
  return "?";
}

namespace {

struct InvariantChecker {
  std::string operator()(const SchedulingState& s) const {
    // The nested map already admits one topic per slot; topics must be set.
    for (const auto& [date, slots] : s.calendar) {
      for (const auto& [time, topic] : slots) {
        if (topic.empty()) return "empty topic at " + date + " " + time;
      }
    }
    return {};
  }

  std::string operator()(const TravelState& s) const {
    for (const auto& f : s.flights_db) {
      if (f.seats_left < 0) return "negative seats_left on " + f.id;
      if (!(f.price > 0)) return "non-positive price on " + f.id;
    }
    for (const auto& [id, r] : s.reservations) {
      if (!s.FindFlight(id)) return "reservation for unknown flight " + id;
      if (r.status == ReservationStatus::kConfirmed && r.passenger.empty()) {
        return "confirmed reservation without passenger " + id;
      }
    }
    for (const auto& id : s.holds) {
      if (!s.FindFlight(id)) return "hold on unknown flight " + id;
    }
    return {};
  }

  std::string operator()(const SupportState& s) const {
    for (const auto& [id, t] : s.tickets) {
      if (t.ticket_id != id) return "ticket key mismatch " + id;
      if (t.status == TicketStatus::kClosed && t.resolution.empty()) {
        return "closed ticket without resolution " + id;
      }
    }
    return {};
  }

  std::string operator()(const EcommerceState& s) const {
    for (const auto& [sku, n] : s.inventory) {
      if (n < 0) return "negative inventory for " + sku;
    }
    for (const auto& [id, o] : s.orders) {
      for (const auto& line : o.lines) {
        if (!s.FindProduct(line.sku)) return "order " + id + " has unknown sku " + line.sku;
      }
    }
    return {};
  }
};

// --- JSON encoding -----------------------------------------------------------

json ToJson(const SchedulingState& s) {
  return json{{"calendar", s.calendar}};
}

json ToJson(const TravelState& s) {
  json flights = json::array();
  for (const auto& f : s.flights_db) {
    flights.push_back({{"id", f.id}, {"origin", f.origin}, {"dest", f.dest},
                       {"date", f.date}, {"price", f.price},
                       {"seats_left", f.seats_left}});
  }
  json res = json::object();
  for (const auto& [id, r] : s.reservations) {
    res[id] = {{"passenger", r.passenger},
               {"status", ToString(r.status)},
               {"payment_info", r.payment_info}};
  }
  return json{{"flights_db", flights}, {"holds", s.holds}, {"reservations", res}};
}

json ToJson(const SupportState& s) {
  json tickets = json::object();
  for (const auto& [id, t] : s.tickets) {
    tickets[id] = {{"ticket_id", t.ticket_id},
                   {"customer_id", t.customer_id},
                   {"subject", t.subject},
                   {"description", t.description},
                   {"priority", t.priority},
                   {"status", ToString(t.status)},
                   {"resolution", t.resolution},
                   {"escalate_to", t.escalate_to},
                   {"escalation_reason", t.escalation_reason},
                   {"notes", t.notes}};
  }
  json kb = json::array();
  for (const auto& a : s.kb) {
    kb.push_back({{"article_id", a.article_id}, {"title", a.title},
                  {"category", a.category}, {"body", a.body}});
  }
  return json{{"tickets", tickets}, {"kb", kb}, {"next_ticket_seq", s.next_ticket_seq}};
}

json ToJson(const EcommerceState& s) {
  json catalog = json::array();
  for (const auto& p : s.catalog) {
    catalog.push_back({{"sku", p.sku}, {"name", p.name},
                       {"category", p.category}, {"price", p.price}});
  }
  json orders = json::object();
  for (const auto& [id, o] : s.orders) {
    json lines = json::array();
    for (const auto& l : o.lines) {
      lines.push_back({{"sku", l.sku}, {"qty", l.qty},
                       {"unit_price", l.unit_price}, {"returned", l.returned}});
    }
    orders[id] = {{"order_id", o.order_id},
                  {"customer_id", o.customer_id},
                  {"lines", lines},
                  {"shipping_address", o.shipping_address},
                  {"coupon_code", o.coupon_code},
                  {"discount_pct", o.discount_pct},
                  {"subtotal", o.subtotal},
                  {"discount", o.discount},
                  {"total", o.total},
                  {"status", ToString(o.status)},
                  {"return_reason", o.return_reason},
                  {"refund_method", o.refund_method}};
  }
  json coupons = json::object();
  for (const auto& [code, c] : s.coupons) {
    coupons[code] = {{"discount_pct", c.discount_pct}, {"min_subtotal", c.min_subtotal}};
  }
  return json{{"catalog", catalog},
              {"inventory", s.inventory},
              {"orders", orders},
              {"coupons", coupons},
              {"next_order_seq", s.next_order_seq}};
}

ReservationStatus ParseReservationStatus(const std::string& s) {
  if (s == "held") return ReservationStatus::kHeld;
  if (s == "confirmed") return ReservationStatus::kConfirmed;
  throw ValidationError("bad reservation status '" + s + "'");
}

TicketStatus ParseTicketStatus(const std::string& s) {
  if (s == "open") return TicketStatus::kOpen;
  if (s == "escalated") return TicketStatus::kEscalated;
  if (s == "closed") return TicketStatus::kClosed;
  throw ValidationError("bad ticket status '" + s + "'");
}

OrderStatus ParseOrderStatus(const std::string& s) {
  if (s == "placed") return OrderStatus::kPlaced;
  if (s == "partially_returned") return OrderStatus::kPartiallyReturned;
  if (s == "returned") return OrderStatus::kReturned;
  throw ValidationError("bad order status '" + s + "'");
}

SchedulingState SchedulingFromJson(const json& j) {
  SchedulingState s;
  j.at("calendar").get_to(s.calendar);
  return s;
}

TravelState TravelFromJson(const json& j) {
  TravelState s;
  for (const auto& f : j.at("flights_db")) {
    s.flights_db.push_back({f.at("id").get<std::string>(),
                            f.at("origin").get<std::string>(),
                            f.at("dest").get<std::string>(),
                            f.at("date").get<std::string>(),
                            f.at("price").get<double>(),
                            f.at("seats_left").get<int>()});
  }
  j.at("holds").get_to(s.holds);
  for (const auto& [id, r] : j.at("reservations").items()) {
    s.reservations[id] = {r.at("passenger").get<std::string>(),
                          ParseReservationStatus(r.at("status").get<std::string>()),
                          r.at("payment_info").get<std::string>()};
  }
  return s;
}

SupportState SupportFromJson(const json& j) {
  SupportState s;
  for (const auto& [id, t] : j.at("tickets").items()) {
    TicketRec rec;
    rec.ticket_id = t.at("ticket_id").get<std::string>();
    rec.customer_id = t.at("customer_id").get<std::string>();
    rec.subject = t.at("subject").get<std::string>();
    rec.description = t.at("description").get<std::string>();
    rec.priority = t.at("priority").get<std::string>();
    rec.status = ParseTicketStatus(t.at("status").get<std::string>());
    rec.resolution = t.at("resolution").get<std::string>();
    rec.escalate_to = t.at("escalate_to").get<std::string>();
    rec.escalation_reason = t.at("escalation_reason").get<std::string>();
    t.at("notes").get_to(rec.notes);
    s.tickets[id] = std::move(rec);
  }
  for (const auto& a : j.at("kb")) {
    s.kb.push_back({a.at("article_id").get<std::string>(),
                    a.at("title").get<std::string>(),
                    a.at("category").get<std::string>(),
                    a.at("body").get<std::string>()});
  }
  s.next_ticket_seq = j.at("next_ticket_seq").get<std::int64_t>();
  return s;
}

EcommerceState EcommerceFromJson(const json& j) {
  EcommerceState s;
  for (const auto& p : j.at("catalog")) {
    s.catalog.push_back({p.at("sku").get<std::string>(),
                         p.at("name").get<std::string>(),
                         p.at("category").get<std::string>(),
                         p.at("price").get<double>()});
  }
  j.at("inventory").get_to(s.inventory);
  for (const auto& [id, o] : j.at("orders").items()) {
    OrderRec rec;
    rec.order_id = o.at("order_id").get<std::string>();
    rec.customer_id = o.at("customer_id").get<std::string>();
    for (const auto& l : o.at("lines")) {
      rec.lines.push_back({l.at("sku").get<std::string>(), l.at("qty").get<int>(),
                           l.at("unit_price").get<double>(),
                           l.at("returned").get<bool>()});
    }
    rec.shipping_address = o.at("shipping_address").get<std::string>();
    rec.coupon_code = o.at("coupon_code").get<std::string>();
    rec.discount_pct = o.at("discount_pct").get<double>();
    rec.subtotal = o.at("subtotal").get<double>();
    rec.discount = o.at("discount").get<double>();
    rec.total = o.at("total").get<double>();
    rec.status = ParseOrderStatus(o.at("status").get<std::string>());
    rec.return_reason = o.at("return_reason").get<std::string>();
    rec.refund_method = o.at("refund_method").get<std::string>();
    s.orders[id] = std::move(rec);
  }
  for (const auto& [code, c] : j.at("coupons").items()) {
    s.coupons[code] = {c.at("discount_pct").get<double>(),
                       c.at("min_subtotal").get<double>()};
  }
  s.next_order_seq = j.at("next_order_seq").get<std::int64_t>();
  return s;
}

}  // namespace

std::string CheckStateInvariants(const DomainState& state) {
  return std::visit(InvariantChecker{}, state);
}

json StateToJson(const DomainState& state) {
  json j = std::visit([](const auto& s) { return ToJson(s); }, state);
  j["domain"] = DomainName(DomainOf(state));
  return j;
}

DomainState StateFromJson(const json& j) {
  try {
    switch (ParseDomain(j.at("domain").get<std::string>())) {
      case Domain::kScheduling: return SchedulingFromJson(j);
      case Domain::kTravel: return TravelFromJson(j);
      case Domain::kSupport: return SupportFromJson(j);
      case Domain::kEcommerce: return EcommerceFromJson(j);
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad domain state: ") + e.what());
  } catch (const ConfigError& e) {
    throw ValidationError(e.what());
  }
  throw ValidationError("bad domain state");
}

}  // namespace relsurf
