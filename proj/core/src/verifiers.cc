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
#include <array>

#include "domains_internal.h"
#include "relsurf/errors.h"

namespace relsurf {
namespace {

using internal::Lower;
using internal::NormalizeText;

// New (date, time, topic) entries of the final calendar, plus whether every
// initial entry survived unchanged.
struct CalendarDiff {
  std::vector<std::array<std::string, 3>> added;
  bool initial_kept = true;
};

CalendarDiff Diff(const SchedulingState& a, const SchedulingState& b) {
  CalendarDiff d;
  for (const auto& [date, slots] : a.calendar) {
    for (const auto& [time, topic] : slots) {
      auto day = b.calendar.find(date);
      if (day == b.calendar.end()) {
        d.initial_kept = false;
        continue;
      }
      auto slot = day->second.find(time);
      if (slot == day->second.end() || slot->second != topic) d.initial_kept = false;
    }
  }
  for (const auto& [date, slots] : b.calendar) {
    for (const auto& [time, topic] : slots) {
      auto day = a.calendar.find(date);
      if (day == a.calendar.end() || !day->second.count(time)) {
        d.added.push_back({date, time, topic});
      }
    }
  }
  return d;
}

bool SameTopic(std::string_view a, std::string_view b) {
  auto strip = [](std::string s) {
    if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
      s = s.substr(1, s.size() - 2);
    }
    return s;
  };
  return NormalizeText(strip(std::string(a))) == NormalizeText(strip(std::string(b)));
}

bool SchedBooked(const DomainState& s0, const DomainState& sf, const VerifierParams& p) {
  const auto* a = std::get_if<SchedulingState>(&s0);
  const auto* b = std::get_if<SchedulingState>(&sf);
  if (!a || !b) return false;
  const CalendarDiff d = Diff(*a, *b);
  return d.initial_kept && d.added.size() == 1 && d.added[0][0] == p.at("date") &&
         d.added[0][1] == p.at("time") && SameTopic(d.added[0][2], p.at("topic"));
}

bool SchedConflict(const DomainState& s0, const DomainState& sf, const VerifierParams& p) {
  const auto* a = std::get_if<SchedulingState>(&s0);
  const auto* b = std::get_if<SchedulingState>(&sf);
  if (!a || !b) return false;
  const CalendarDiff d = Diff(*a, *b);
  if (!d.initial_kept || d.added.size() != 1) return false;
  const auto& [date, time, topic] = d.added[0];
  return date == p.at("date") && (time == p.at("time") || time == p.at("alt_time")) &&
         SameTopic(topic, p.at("topic"));
}

// Flights newly confirmed during the episode.
std::vector<std::string> NewConfirmations(const TravelState& a, const TravelState& b) {
  std::vector<std::string> out;
  for (const auto& [id, r] : b.reservations) {
    if (r.status != ReservationStatus::kConfirmed) continue;
    auto prev = a.reservations.find(id);
    if (prev == a.reservations.end() || !(prev->second == r)) out.push_back(id);
  }
  return out;
}

bool ConfirmedFor(const TravelState& a, const TravelState& b, const std::string& flight,
                  const std::string& passenger) {
  const auto fresh = NewConfirmations(a, b);
  if (fresh.size() != 1 || fresh[0] != flight) return false;
  const Reservation& r = b.reservations.at(flight);
  return NormalizeText(r.passenger) == NormalizeText(passenger);
}

bool TravelDirect(const DomainState& s0, const DomainState& sf, const VerifierParams& p) {
  const auto* a = std::get_if<TravelState>(&s0);
  const auto* b = std::get_if<TravelState>(&sf);
  if (!a || !b) return false;
  return ConfirmedFor(*a, *b, p.at("flight_id"), p.at("passenger"));
}

bool TravelCheapest(const DomainState& s0, const DomainState& sf, const VerifierParams& p) {
  const auto* a = std::get_if<TravelState>(&s0);
  const auto* b = std::get_if<TravelState>(&sf);
  if (!a || !b) return false;
  const FlightRec* best = nullptr;
  for (const auto& f : a->flights_db) {
    if (f.origin != p.at("origin") || f.dest != p.at("dest") || f.date != p.at("date")) continue;
    if (f.seats_left <= 0) continue;
    if (!best || f.price < best->price || (f.price == best->price && f.id < best->id)) {
      best = &f;
    }
  }
  if (!best) return false;
  return ConfirmedFor(*a, *b, best->id, p.at("passenger"));
}

bool SupportCreateClose(const DomainState& s0, const DomainState& sf,
                        const VerifierParams& p) {
  const auto* a = std::get_if<SupportState>(&s0);
  const auto* b = std::get_if<SupportState>(&sf);
  if (!a || !b) return false;
  bool found = false;
  for (const auto& [id, t] : b->tickets) {
    if (a->tickets.count(id)) continue;
    if (Lower(t.customer_id) != Lower(p.at("customer_id"))) continue;
    // A duplicate left open for the customer is a failure.
    if (t.status != TicketStatus::kClosed) return false;
    if (SameTopic(t.subject, p.at("subject")) && t.priority == p.at("priority") &&
        SameTopic(t.resolution, p.at("resolution"))) {
      found = true;
    }
  }
  return found;
}

std::string TeamName(std::string_view s) {
  std::string n = NormalizeText(s);
  if (n.size() > 5 && n.substr(n.size() - 5) == " team") n.resize(n.size() - 5);
  if (n.rfind("the ", 0) == 0) n.erase(0, 4);
  return n;
}

bool SupportEscalate(const DomainState& s0, const DomainState& sf, const VerifierParams& p) {
  const auto* b = std::get_if<SupportState>(&sf);
  if (!std::holds_alternative<SupportState>(s0) || !b) return false;
  auto it = b->tickets.find(p.at("ticket_id"));
  if (it == b->tickets.end()) return false;
  return it->second.status == TicketStatus::kEscalated &&
         TeamName(it->second.escalate_to) == TeamName(p.at("escalate_to"));
}

std::vector<const OrderRec*> NewOrders(const EcommerceState& a, const EcommerceState& b) {
  std::vector<const OrderRec*> out;
  for (const auto& [id, o] : b.orders) {
    if (!a.orders.count(id)) out.push_back(&o);
  }
  return out;
}

bool SameAddress(std::string_view a, std::string_view b) {
  auto squash = [](std::string_view s) {
    std::string out;
    for (char c : NormalizeText(s)) {
      if (c != ',' && c != ' ' && c != '.') out.push_back(c);
    }
    return out;
  };
  return squash(a) == squash(b);
}

// Exactly one new order, placed, for the customer, with a single line.
const OrderRec* SingleNewOrder(const EcommerceState& a, const EcommerceState& b,
                               const VerifierParams& p) {
  const auto fresh = NewOrders(a, b);
  if (fresh.size() != 1) return nullptr;
  const OrderRec* o = fresh[0];
  if (o->status != OrderStatus::kPlaced || o->lines.size() != 1) return nullptr;
  if (Lower(o->customer_id) != Lower(p.at("customer_id"))) return nullptr;
  if (!SameAddress(o->shipping_address, p.at("address"))) return nullptr;
  return o;
}

bool EcomOrder(const DomainState& s0, const DomainState& sf, const VerifierParams& p) {
  const auto* a = std::get_if<EcommerceState>(&s0);
  const auto* b = std::get_if<EcommerceState>(&sf);
  if (!a || !b) return false;
  const OrderRec* o = SingleNewOrder(*a, *b, p);
  return o && o->lines[0].sku == p.at("sku") &&
         std::to_string(o->lines[0].qty) == p.at("qty");
}

bool EcomCheapestCoupon(const DomainState& s0, const DomainState& sf,
                        const VerifierParams& p) {
  const auto* a = std::get_if<EcommerceState>(&s0);
  const auto* b = std::get_if<EcommerceState>(&sf);
  if (!a || !b) return false;
  const ProductRec* best = nullptr;
  for (const auto& prod : a->catalog) {
    if (Lower(prod.category) != Lower(p.at("category"))) continue;
    auto inv = a->inventory.find(prod.sku);
    if (inv == a->inventory.end() || inv->second <= 0) continue;
    if (!best || prod.price < best->price ||
        (prod.price == best->price && prod.sku < best->sku)) {
      best = &prod;
    }
  }
  if (!best) return false;
  const OrderRec* o = SingleNewOrder(*a, *b, p);
  return o && o->lines[0].sku == best->sku && o->lines[0].qty == 1 &&
         o->coupon_code == p.at("coupon") && o->discount > 0;
}

const VerifierSpec kVerifiers[] = {
    {"sched_booked", Domain::kScheduling, &SchedBooked, {"date", "time", "topic"},
     {"book_meeting"}},
    {"sched_conflict", Domain::kScheduling, &SchedConflict,
     {"date", "time", "alt_time", "topic"}, {"book_meeting"}},
    {"travel_direct", Domain::kTravel, &TravelDirect, {"flight_id", "passenger"},
     {"hold_flight", "confirm_booking"}},
    {"travel_cheapest", Domain::kTravel, &TravelCheapest,
     {"origin", "dest", "date", "passenger"},
     {"search_flights", "hold_flight", "confirm_booking"}},
    {"support_create_close", Domain::kSupport, &SupportCreateClose,
     {"customer_id", "subject", "priority", "resolution"}, {"create_ticket", "close_ticket"}},
    {"support_escalate", Domain::kSupport, &SupportEscalate, {"ticket_id", "escalate_to"},
     {"escalate_ticket"}},
    {"ecom_order", Domain::kEcommerce, &EcomOrder, {"customer_id", "sku", "qty", "address"},
     {"create_order"}},
    {"ecom_cheapest_coupon", Domain::kEcommerce, &EcomCheapestCoupon,
     {"customer_id", "category", "coupon", "address"}, {"search_products", "create_order"}},
};

}  // namespace

std::span<const VerifierSpec> VerifierRegistry() { return kVerifiers; }

const VerifierSpec* FindVerifier(std::string_view id) {
  for (const auto& v : kVerifiers) {
    if (v.id == id) return &v;
  }
  return nullptr;
}

bool Verify(const TaskSpec& task, const DomainState& initial, const DomainState& final) {
  const VerifierSpec* v = FindVerifier(task.verifier_id);
  if (!v) throw ConfigError("unknown verifier '" + task.verifier_id + "'");
  for (auto key : v->required_params) {
    if (!task.verifier_params.count(std::string(key))) {
      throw ConfigError("verifier " + task.verifier_id + " needs parameter '" +
                        std::string(key) + "'");
    }
  }
  if (DomainOf(initial) != v->domain || DomainOf(final) != v->domain) return false;
  return v->fn(initial, final, task.verifier_params);
}

}  // namespace relsurf
