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

#ifndef RELSURF_CALENDAR_H_
#define RELSURF_CALENDAR_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace relsurf {

// Fixed simulation "today"; relative phrases are grounded against it.
inline constexpr std::string_view kSimulationToday = "2025-12-31";

enum class DateStyle {
  kIso,           // 2026-01-01
  kMonthDayYear,  // Jan 1, 2026
  kUsNumeric,     // 01/01/2026
  kDayMonthYear,  // 1 January 2026
};

// Accepts every surface form the harness emits: the DateStyle forms, full
// month names, and relative phrases ("today", "tomorrow", "the day after
// tomorrow", "in N days", "N days from today"). Returns canonical ISO.
std::optional<std::string> ParseDate(std::string_view text);

// "09:00", "9:00", "9am", "9:30 pm", "14:00" -> "HH:MM".
std::optional<std::string> ParseTime(std::string_view text);

// iso must be a valid canonical date.
std::string FormatDate(std::string_view iso, DateStyle style);

// Relative phrase for dates 0..14 days after kSimulationToday.
std::optional<std::string> RelativePhrase(std::string_view iso);

std::string AddDays(std::string_view iso, int days);
int DaysBetween(std::string_view from_iso, std::string_view to_iso);

struct DateMention {
  std::size_t pos = 0;
  std::size_t len = 0;
  std::string iso;
};

// Every date expression in free text, in order of appearance.
std::vector<DateMention> FindDateMentions(std::string_view text);

}  // namespace relsurf

#endif  // RELSURF_CALENDAR_H_
