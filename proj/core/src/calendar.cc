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

#include "relsurf/calendar.h"

#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <regex>

namespace relsurf {
namespace {

namespace chr = std::chrono;

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<int> ToInt(const std::string& s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

// 1-based month from a full or three-letter name, any case.
std::optional<int> MonthFromName(std::string_view name) {
  std::string n = Lower(name);
  if (!n.empty() && n.back() == '.') n.pop_back();
  for (std::size_t i = 0; i < kMonthNames.size(); ++i) {
    std::string full = Lower(kMonthNames[i]);
    if (n == full || (n.size() == 3 && full.compare(0, 3, n) == 0)) {
      return static_cast<int>(i) + 1;
    }
  }
  // "Sept" shows up often enough to accept.
  if (n == "sept") return 9;
  return std::nullopt;
}

std::optional<chr::year_month_day> MakeDate(int y, int m, int d) {
  chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                          chr::day{static_cast<unsigned>(d)}};
  if (m < 1 || m > 12 || d < 1 || !ymd.ok()) return std::nullopt;
  return ymd;
}

std::string Iso(const chr::year_month_day& ymd) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

std::optional<chr::year_month_day> ParseIso(std::string_view s) {
  static const std::regex re(R"((\d{4})-(\d{2})-(\d{2}))");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(s.begin(), s.end(), m, re)) return std::nullopt;
  return MakeDate(*ToInt(m[1]), *ToInt(m[2]), *ToInt(m[3]));
}

chr::sys_days Today() { return chr::sys_days{*ParseIso(kSimulationToday)}; }

const std::string kMonthAlt =
    "(?:Jan(?:uary)?|Feb(?:ruary)?|Mar(?:ch)?|Apr(?:il)?|May|June?|July?|"
    "Aug(?:ust)?|Sep(?:t(?:ember)?)?|Oct(?:ober)?|Nov(?:ember)?|Dec(?:ember)?)"
    "\\.?";

}  // namespace

std::optional<std::string> ParseDate(std::string_view text) {
  const std::string s = Trim(text);
  if (auto ymd = ParseIso(s)) return Iso(*ymd);

  static const std::regex mdy("(" + kMonthAlt + R"() (\d{1,2})(?:st|nd|rd|th)?,? (\d{4}))",
                              std::regex::icase);
  static const std::regex dmy(R"((\d{1,2}) ()" + kMonthAlt + R"() (\d{4}))",
                              std::regex::icase);
  static const std::regex us(R"((\d{1,2})/(\d{1,2})/(\d{4}))");
  static const std::regex in_days(R"(in (\d{1,3}) days?)", std::regex::icase);
  static const std::regex days_from(R"((\d{1,3}) days? from (?:today|now))",
                                    std::regex::icase);
  std::smatch m;
  std::optional<chr::year_month_day> ymd;
  if (std::regex_match(s, m, mdy)) {
    ymd = MakeDate(*ToInt(m[3]), *MonthFromName(m[1].str()), *ToInt(m[2]));
  } else if (std::regex_match(s, m, dmy)) {
    ymd = MakeDate(*ToInt(m[3]), *MonthFromName(m[2].str()), *ToInt(m[1]));
  } else if (std::regex_match(s, m, us)) {
    ymd = MakeDate(*ToInt(m[3]), *ToInt(m[1]), *ToInt(m[2]));
  } else {
    const std::string l = Lower(s);
    std::optional<int> offset;
    if (l == "today") offset = 0;
    else if (l == "tomorrow") offset = 1;
    else if (l == "the day after tomorrow" || l == "day after tomorrow") offset = 2;
    else if (std::regex_match(s, m, in_days) || std::regex_match(s, m, days_from)) {
      offset = ToInt(m[1]);
    }
    if (offset) ymd = chr::year_month_day{Today() + chr::days{*offset}};
  }
  if (!ymd) return std::nullopt;
  return Iso(*ymd);
}

std::optional<std::string> ParseTime(std::string_view text) {
  const std::string s = Lower(Trim(text));
  static const std::regex hm(R"((\d{1,2}):(\d{2}))");
  static const std::regex ampm(R"((\d{1,2})(?::(\d{2}))? ?([ap])\.?m\.?)");
  std::smatch m;
  int h = 0, mi = 0;
  if (std::regex_match(s, m, hm)) {
    h = *ToInt(m[1]);
    mi = *ToInt(m[2]);
  } else if (std::regex_match(s, m, ampm)) {
    h = *ToInt(m[1]);
    mi = m[2].matched ? *ToInt(m[2]) : 0;
    if (h < 1 || h > 12) return std::nullopt;
    if (m[3] == "a") h = h == 12 ? 0 : h;
    else h = h == 12 ? 12 : h + 12;
  } else if (s == "noon") {
    h = 12;
  } else {
    return std::nullopt;
  }
  if (h < 0 || h > 23 || mi < 0 || mi > 59) return std::nullopt;
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d:%02d", h, mi);
  return std::string(buf);
}

std::string FormatDate(std::string_view iso, DateStyle style) {
  auto ymd = ParseIso(iso);
  if (!ymd) return std::string(iso);
  const int y = static_cast<int>(ymd->year());
  const unsigned mo = static_cast<unsigned>(ymd->month());
  const unsigned d = static_cast<unsigned>(ymd->day());
  const std::string_view name = kMonthNames[mo - 1];
  char buf[48];
  switch (style) {
    case DateStyle::kIso:
      return Iso(*ymd);
    case DateStyle::kMonthDayYear:
      std::snprintf(buf, sizeof buf, "%.3s %u, %d", name.data(), d, y);
      return buf;
    case DateStyle::kUsNumeric:
      std::snprintf(buf, sizeof buf, "%02u/%02u/%04d", mo, d, y);
      return buf;
    case DateStyle::kDayMonthYear:
      std::snprintf(buf, sizeof buf, "%u %.*s %d", d, static_cast<int>(name.size()),
                    name.data(), y);
      return buf;
  }
  return std::string(iso);
}

std::optional<std::string> RelativePhrase(std::string_view iso) {
  if (!ParseIso(iso)) return std::nullopt;
  const int days = DaysBetween(kSimulationToday, iso);
  if (days == 0) return "today";
  if (days == 1) return "tomorrow";
  if (days == 2) return "the day after tomorrow";
  if (days >= 3 && days <= 14) return "in " + std::to_string(days) + " days";
  return std::nullopt;
}

std::string AddDays(std::string_view iso, int days) {
  auto ymd = ParseIso(iso);
  if (!ymd) return std::string(iso);
  return Iso(chr::year_month_day{chr::sys_days{*ymd} + chr::days{days}});
}

int DaysBetween(std::string_view from_iso, std::string_view to_iso) {
  auto a = ParseIso(from_iso);
  auto b = ParseIso(to_iso);
  if (!a || !b) return 0;
  return static_cast<int>((chr::sys_days{*b} - chr::sys_days{*a}).count());
}

std::vector<DateMention> FindDateMentions(std::string_view text) {
  static const std::regex re(
      R"(\b(?:\d{4}-\d{2}-\d{2}|)" + kMonthAlt +
          R"( \d{1,2}(?:st|nd|rd|th)?,? \d{4}|\d{1,2} )" + kMonthAlt +
          R"( \d{4}|\d{1,2}/\d{1,2}/\d{4}|the day after tomorrow|today|tomorrow|)"
          R"(in \d{1,3} days?|\d{1,3} days? from (?:today|now))\b)",
      std::regex::icase);
  std::vector<DateMention> out;
  const std::string s(text);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), re); it != std::sregex_iterator();
       ++it) {
    const auto& m = *it;
    if (auto iso = ParseDate(m.str())) {
      out.push_back({static_cast<std::size_t>(m.position()),
                     static_cast<std::size_t>(m.length()), *iso});
    }
  }
  return out;
}

}  // namespace relsurf
