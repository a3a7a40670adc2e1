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

#include "domains_internal.h"
#include "relsurf/calendar.h"
#include "relsurf/result_text.h"

namespace relsurf::internal {
namespace {

std::string Upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

void AddFlightFields(ResultBuilder& b, const FlightRec& f) {
  b.Add("id", f.id)
      .Add("origin", f.origin)
      .Add("dest", f.dest)
      .Add("date", f.date)
      .AddAmount("price", f.price)
      .Add("seats_left", static_cast<long long>(f.seats_left));
}

std::string SearchFlights(const TravelState& s, const ToolArgs& args) {
  const std::string origin = Upper(ArgStr(args, "origin"));
  const std::string dest = Upper(ArgStr(args, "dest"));
  const std::string raw_date = ArgStr(args, "date");
  auto date = ParseDate(raw_date);
  if (!date) return ResultBuilder("error", "bad_date").Add("value", raw_date).str();
  std::vector<const FlightRec*> hits;
  for (const auto& f : s.flights_db) {
    if (f.origin == origin && f.dest == dest && f.date == *date) hits.push_back(&f);
  }
  std::sort(hits.begin(), hits.end(),
            [](const FlightRec* a, const FlightRec* b) { return a->id < b->id; });
  ResultBuilder b("flights", hits.empty() ? "none" : "found");
  b.Add("origin", origin).Add("dest", dest).Add("date", *date);
  b.Add("count", static_cast<long long>(hits.size()));
  for (const FlightRec* f : hits) {
    b.Row();
    AddFlightFields(b, *f);
  }
  return b.str();
}

std::string HoldFlight(TravelState& s, const ToolArgs& args) {
  const std::string id = Upper(ArgStr(args, "flight_id"));
  const FlightRec* f = s.FindFlight(id);
  if (!f) return ResultBuilder("error", "unknown_flight").Add("flight_id", id).str();
  auto r = s.reservations.find(id);
  if (r != s.reservations.end() && r->second.status == ReservationStatus::kConfirmed) {
    return ResultBuilder("error", "already_booked").Add("flight_id", id).str();
  }
  if (f->seats_left <= 0) {
    return ResultBuilder("error", "sold_out").Add("flight_id", id).str();
  }
  s.holds.insert(id);
  if (r == s.reservations.end()) s.reservations[id] = Reservation{};
  return ResultBuilder("ok", "held")
      .Add("flight_id", id)
      .AddAmount("price", f->price)
      .Add("status", "held")
      .str();
}

std::string ConfirmBooking(TravelState& s, const ToolArgs& args) {
  const std::string id = Upper(ArgStr(args, "flight_id"));
  const std::string passenger = ArgStr(args, "passenger");
  const std::string payment = ArgStr(args, "payment_info");
  FlightRec* f = s.FindFlight(id);
  if (!f) return ResultBuilder("error", "unknown_flight").Add("flight_id", id).str();
  if (!s.holds.count(id)) {
    return ResultBuilder("error", "no_hold").Add("flight_id", id).str();
  }
  if (passenger.empty()) {
    return ResultBuilder("error", "passenger_required").Add("flight_id", id).str();
  }
  if (payment.empty()) {
    return ResultBuilder("error", "payment_required").Add("flight_id", id).str();
  }
  if (f->seats_left <= 0) {
    return ResultBuilder("error", "sold_out").Add("flight_id", id).str();
  }
  s.holds.erase(id);
  s.reservations[id] = Reservation{passenger, ReservationStatus::kConfirmed, payment};
  f->seats_left -= 1;
  return ResultBuilder("ok", "confirmed")
      .Add("flight_id", id)
      .Add("passenger", passenger)
      .AddAmount("price", f->price)
      .Add("status", "confirmed")
      .str();
}

std::string GetItinerary(const TravelState& s) {
  ResultBuilder b("itinerary", "reservations");
  b.Add("count", static_cast<long long>(s.reservations.size()));
  for (const auto& [id, r] : s.reservations) {
    b.Row().Add("flight_id", id).Add("passenger", r.passenger).Add("status", ToString(r.status));
    if (const FlightRec* f = s.FindFlight(id)) {
      b.Add("origin", f->origin).Add("dest", f->dest).Add("date", f->date);
      b.AddAmount("price", f->price);
    }
  }
  return b.str();
}

// --- suite -------------------------------------------------------------------

const std::vector<std::string> kAirports = {"LON", "PAR", "NYC", "BER", "MAD",
                                            "ROM", "AMS", "SFO", "TYO"};
const std::vector<std::string> kCarriers = {"BA", "AA", "LH", "AF", "IB", "KL", "DL", "UA"};
const std::vector<std::string> kPassengers = {"Alice", "Carol", "Dave",  "Erin",
                                              "Frank", "Grace", "Heidi", "Ivan"};

struct Route {
  std::string origin, dest, date;
};

Route RandomRoute(Rng& rng) {
  auto ends = Sample(rng, kAirports.size(), 2);
  return {kAirports[ends[0]], kAirports[ends[1]],
          AddDays(kSimulationToday, 2 + static_cast<int>(rng.Below(20)))};
}

// Distinct flight ids across the state.
std::string NewFlightId(Rng& rng, const TravelState& s) {
  for (;;) {
    std::string id = Pick(rng, kCarriers) + "-" + std::to_string(100 + rng.Below(900));
    if (!s.FindFlight(id)) return id;
  }
}

FlightRec RandomFlight(Rng& rng, const TravelState& s, const Route& r) {
  return {NewFlightId(rng, s), r.origin, r.dest, r.date,
          static_cast<double>(100 + 10 * rng.Below(60)),
          static_cast<int>(1 + rng.Below(12))};
}

void AddNoise(Rng& rng, TravelState& s, int n) {
  for (int i = 0; i < n; ++i) s.flights_db.push_back(RandomFlight(rng, s, RandomRoute(rng)));
}

TaskSpec DirectTask(std::string id, Rng& rng) {
  TravelState s;
  AddNoise(rng, s, 2);
  const Route r = RandomRoute(rng);
  FlightRec target = RandomFlight(rng, s, r);
  s.flights_db.push_back(target);
  // A same-route alternative so that the id matters.
  s.flights_db.push_back(RandomFlight(rng, s, r));
  const std::string passenger = Pick(rng, kPassengers);
  TaskSpec t;
  t.task_id = std::move(id);
  t.domain = Domain::kTravel;
  t.complexity = Complexity::kL1;
  t.description = "Book flight " + target.id + " from " + r.origin + " to " + r.dest +
                  " on " + r.date + " for " + passenger + ".";
  t.initial_state = std::move(s);
  t.verifier_id = "travel_direct";
  t.verifier_params = {{"flight_id", target.id}, {"passenger", passenger}};
  t.goal_meta = {"travel_direct",
                 {{"flight_id", EntityKind::kId, target.id},
                  {"origin", EntityKind::kCode, r.origin},
                  {"dest", EntityKind::kCode, r.dest},
                  {"date", EntityKind::kDate, r.date},
                  {"passenger", EntityKind::kName, passenger}}};
  return t;
}

TaskSpec CheapestTask(std::string id, TravelState s, const Route& r,
                      const std::string& passenger) {
  TaskSpec t;
  t.task_id = std::move(id);
  t.domain = Domain::kTravel;
  t.complexity = Complexity::kL2;
  t.description = "Book the cheapest flight from " + r.origin + " to " + r.dest + " on " +
                  r.date + " for " + passenger + ".";
  t.initial_state = std::move(s);
  t.verifier_id = "travel_cheapest";
  t.verifier_params = {
      {"origin", r.origin}, {"dest", r.dest}, {"date", r.date}, {"passenger", passenger}};
  t.goal_meta = {"travel_cheapest",
                 {{"origin", EntityKind::kCode, r.origin},
                  {"dest", EntityKind::kCode, r.dest},
                  {"date", EntityKind::kDate, r.date},
                  {"passenger", EntityKind::kName, passenger}}};
  return t;
}

TaskSpec RandomCheapestTask(std::string id, Rng& rng) {
  TravelState s;
  AddNoise(rng, s, 2);
  const Route r = RandomRoute(rng);
  // Three candidates with distinct prices on the route.
  auto prices = Sample(rng, 40, 3);
  for (std::size_t p : prices) {
    FlightRec f = RandomFlight(rng, s, r);
    f.price = static_cast<double>(150 + 10 * p);
    s.flights_db.push_back(f);
  }
  // Same route on the next day, priced below every candidate.
  Route other = r;
  other.date = AddDays(r.date, 1);
  FlightRec decoy = RandomFlight(rng, s, other);
  decoy.price = 90;
  s.flights_db.push_back(decoy);
  return CheapestTask(std::move(id), std::move(s), r, Pick(rng, kPassengers));
}

}  // namespace

std::string ApplyTravel(TravelState& s, std::string_view tool, const ToolArgs& args) {
  if (tool == "search_flights") return SearchFlights(s, args);
  if (tool == "hold_flight") return HoldFlight(s, args);
  if (tool == "confirm_booking") return ConfirmBooking(s, args);
  if (tool == "get_itinerary") return GetItinerary(s);
  return ResultBuilder("error", "unknown_tool").Add("name", tool).str();
}

std::vector<TaskSpec> TravelSuite(Rng& rng) {
  TravelState c2;
  c2.flights_db = {{"BA-200", "LON", "PAR", "2026-01-05", 500, 10},
                   {"AA-500", "LON", "PAR", "2026-01-05", 300, 10}};
  std::vector<TaskSpec> out;
  out.push_back(DirectTask("travel-1", rng));
  out.push_back(CheapestTask("travel-2", std::move(c2), {"LON", "PAR", "2026-01-05"}, "Bob"));
  out.push_back(DirectTask("travel-3", rng));
  out.push_back(RandomCheapestTask("travel-4", rng));
  out.push_back(DirectTask("travel-5", rng));
  return out;
}

}  // namespace relsurf::internal
