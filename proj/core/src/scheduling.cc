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

#include "domains_internal.h"
#include "relsurf/calendar.h"
#include "relsurf/result_text.h"

namespace relsurf::internal {
namespace {

std::string BadDate(std::string_view value) {
  return ResultBuilder("error", "bad_date").Add("value", value).str();
}

std::string BadTime(std::string_view value) {
  return ResultBuilder("error", "bad_time").Add("value", value).str();
}

std::string BookMeeting(SchedulingState& s, const ToolArgs& args) {
  const std::string raw_date = ArgStr(args, "date");
  const std::string raw_time = ArgStr(args, "time");
  const std::string topic = ArgStr(args, "topic");
  auto date = ParseDate(raw_date);
  if (!date) return BadDate(raw_date);
  auto time = ParseTime(raw_time);
  if (!time) return BadTime(raw_time);
  if (topic.empty()) return ErrorText("book_meeting", "topic required");
  auto day = s.calendar.find(*date);
  if (day != s.calendar.end()) {
    auto slot = day->second.find(*time);
    if (slot != day->second.end()) {
      return ResultBuilder("error", "conflict")
          .Add("date", *date)
          .Add("time", *time)
          .Add("topic", slot->second)
          .str();
    }
  }
  s.calendar[*date][*time] = topic;
  return ResultBuilder("ok", "booked")
      .Add("date", *date)
      .Add("time", *time)
      .Add("topic", topic)
      .str();
}

std::string CheckCalendar(const SchedulingState& s, const ToolArgs& args) {
  const std::string raw = ArgStr(args, "date");
  auto date = ParseDate(raw);
  if (!date) return BadDate(raw);
  ResultBuilder b("calendar", "day");
  b.Add("date", *date);
  auto day = s.calendar.find(*date);
  const std::size_t n = day == s.calendar.end() ? 0 : day->second.size();
  b.Add("count", static_cast<long long>(n));
  if (n > 0) {
    for (const auto& [time, topic] : day->second) {
      b.Row().Add("time", time).Add("topic", topic);
    }
  }
  return b.str();
}

std::string CancelMeeting(SchedulingState& s, const ToolArgs& args) {
  const std::string raw_date = ArgStr(args, "date");
  const std::string raw_time = ArgStr(args, "time");
  auto date = ParseDate(raw_date);
  if (!date) return BadDate(raw_date);
  auto time = ParseTime(raw_time);
  if (!time) return BadTime(raw_time);
  auto day = s.calendar.find(*date);
  if (day == s.calendar.end() || !day->second.count(*time)) {
    return ResultBuilder("error", "not_found").Add("date", *date).Add("time", *time).str();
  }
  const std::string topic = day->second[*time];
  day->second.erase(*time);
  if (day->second.empty()) s.calendar.erase(day);
  return ResultBuilder("ok", "cancelled")
      .Add("date", *date)
      .Add("time", *time)
      .Add("topic", topic)
      .str();
}

std::string ListMeetings(const SchedulingState& s, const ToolArgs& args) {
  const std::string raw_start = ArgStr(args, "start_date");
  const std::string raw_end = ArgStr(args, "end_date");
  auto start = ParseDate(raw_start);
  if (!start) return BadDate(raw_start);
  auto end = ParseDate(raw_end);
  if (!end) return BadDate(raw_end);
  if (*end < *start) return ErrorText("list_meetings", "end_date before start_date");
  ResultBuilder b("meetings", "range");
  b.Add("start", *start).Add("end", *end);
  long long n = 0;
  for (auto it = s.calendar.lower_bound(*start); it != s.calendar.end() && it->first <= *end;
       ++it) {
    n += static_cast<long long>(it->second.size());
  }
  b.Add("count", n);
  for (auto it = s.calendar.lower_bound(*start); it != s.calendar.end() && it->first <= *end;
       ++it) {
    for (const auto& [time, topic] : it->second) {
      b.Row().Add("date", it->first).Add("time", time).Add("topic", topic);
    }
  }
  return b.str();
}

// --- suite -------------------------------------------------------------------

const std::vector<std::string> kTopics = {
    "Budget Sync",    "Design Review", "Hiring Debrief", "Roadmap Planning",
    "Vendor Call",    "Quarterly Plan", "Launch Retro",  "Security Audit",
    "Team Offsite",   "Client Demo"};
const std::vector<std::string> kBusyTopics = {"Standup", "Lunch", "Interview",
                                              "All Hands", "Training"};
const std::vector<std::string> kTimes = {"09:00", "10:00", "11:00", "13:00",
                                         "14:00", "15:00", "16:00"};

std::string RandomDate(Rng& rng) {
  // Within two weeks of the simulation day so relative phrasing applies.
  return AddDays(kSimulationToday, 1 + static_cast<int>(rng.Below(14)));
}

// A few unrelated meetings that must survive the episode.
void AddBackground(Rng& rng, SchedulingState& s, int n) {
  for (int i = 0; i < n; ++i) {
    s.calendar[RandomDate(rng)][Pick(rng, kTimes)] = Pick(rng, kBusyTopics);
  }
}

TaskSpec BookingTask(std::string id, SchedulingState state, const std::string& topic,
                     const std::string& date, const std::string& time) {
  TaskSpec t;
  t.task_id = std::move(id);
  t.domain = Domain::kScheduling;
  t.complexity = Complexity::kL1;
  t.description = "Book a meeting about '" + topic + "' on " + date + " at " + time + ".";
  t.initial_state = std::move(state);
  t.verifier_id = "sched_booked";
  t.verifier_params = {{"date", date}, {"time", time}, {"topic", topic}};
  t.goal_meta = {"sched_booked",
                 {{"topic", EntityKind::kText, topic},
                  {"date", EntityKind::kDate, date},
                  {"time", EntityKind::kTime, time}}};
  return t;
}

TaskSpec ConflictTask(std::string id, Rng& rng) {
  const std::string topic = Pick(rng, kTopics);
  const std::string date = RandomDate(rng);
  auto slots = Sample(rng, kTimes.size(), 2);
  const std::string time = kTimes[slots[0]];
  const std::string alt = kTimes[slots[1]];
  SchedulingState s;
  AddBackground(rng, s, 2);
  s.calendar[date].erase(alt);
  s.calendar[date][time] = Pick(rng, kBusyTopics);
  TaskSpec t;
  t.task_id = std::move(id);
  t.domain = Domain::kScheduling;
  t.complexity = Complexity::kL2;
  t.description = "Book a meeting about '" + topic + "' on " + date + " at " + time +
                  ". If that slot is taken, book it at " + alt + " instead.";
  t.initial_state = std::move(s);
  t.verifier_id = "sched_conflict";
  t.verifier_params = {{"date", date}, {"time", time}, {"alt_time", alt}, {"topic", topic}};
  t.goal_meta = {"sched_conflict",
                 {{"topic", EntityKind::kText, topic},
                  {"date", EntityKind::kDate, date},
                  {"time", EntityKind::kTime, time},
                  {"alt_time", EntityKind::kTime, alt}}};
  return t;
}

TaskSpec RandomBookingTask(std::string id, Rng& rng) {
  const std::string topic = Pick(rng, kTopics);
  const std::string date = RandomDate(rng);
  const std::string time = Pick(rng, kTimes);
  SchedulingState s;
  AddBackground(rng, s, 3);
  auto day = s.calendar.find(date);
  if (day != s.calendar.end()) {
    day->second.erase(time);
    if (day->second.empty()) s.calendar.erase(day);
  }
  return BookingTask(std::move(id), std::move(s), topic, date, time);
}

}  // namespace

std::string ApplyScheduling(SchedulingState& s, std::string_view tool, const ToolArgs& args) {
  if (tool == "book_meeting") return BookMeeting(s, args);
  if (tool == "check_calendar") return CheckCalendar(s, args);
  if (tool == "cancel_meeting") return CancelMeeting(s, args);
  if (tool == "list_meetings") return ListMeetings(s, args);
  return ResultBuilder("error", "unknown_tool").Add("name", tool).str();
}

std::vector<TaskSpec> SchedulingSuite(Rng& rng) {
  std::vector<TaskSpec> out;
  out.push_back(BookingTask("sched-1", SchedulingState{}, "Review", "2026-01-01", "09:00"));
  out.push_back(ConflictTask("sched-2", rng));
  out.push_back(RandomBookingTask("sched-3", rng));
  out.push_back(ConflictTask("sched-4", rng));
  out.push_back(RandomBookingTask("sched-5", rng));
  return out;
}

}  // namespace relsurf::internal
