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

#include "relsurf/result_text.h"

#include <cmath>
#include <cstdio>

namespace relsurf {
namespace {

bool NeedsQuotes(std::string_view v) {
  if (v.empty()) return true;
  for (char c : v) {
    if (c == ' ' || c == '"' || c == '|' || c == '=' || c == '\\' || c == '\n' ||
        c == '\t') {
      return true;
    }
  }
  return false;
}

// Splits on top-level " | " separators, ignoring ones inside quotes.
std::vector<std::string_view> SplitSegments(std::string_view s) {
  std::vector<std::string_view> out;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (quoted) {
      if (c == '\\') ++i;
      else if (c == '"') quoted = false;
    } else if (c == '"') {
      quoted = true;
    } else if (c == '|' && i > 0 && s[i - 1] == ' ' && i + 1 < s.size() && s[i + 1] == ' ') {
      out.push_back(s.substr(start, i - 1 - start));
      start = i + 2;
      ++i;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

// Tokens of a segment; a token is a bare word or key=value.
struct Token {
  std::string key;
  std::string value;
  bool has_value = false;
};

std::vector<Token> Tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && s[i] == ' ') ++i;
    if (i >= s.size()) break;
    Token t;
    while (i < s.size() && s[i] != ' ' && s[i] != '=') t.key.push_back(s[i++]);
    if (i < s.size() && s[i] == '=') {
      t.has_value = true;
      ++i;
      if (i < s.size() && s[i] == '"') {
        ++i;
        while (i < s.size() && s[i] != '"') {
          if (s[i] == '\\' && i + 1 < s.size()) ++i;
          t.value.push_back(s[i++]);
        }
        if (i < s.size()) ++i;  // closing quote; absent on truncated text
      } else {
        while (i < s.size() && s[i] != ' ') t.value.push_back(s[i++]);
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

ResultBuilder::ResultBuilder(std::string_view status, std::string_view verb) {
  text_.append(status).append(": ").append(verb);
}

ResultBuilder& ResultBuilder::Add(std::string_view key, std::string_view value) {
  text_.append(" ").append(key).append("=").append(QuoteValue(value));
  return *this;
}

ResultBuilder& ResultBuilder::Add(std::string_view key, long long value) {
  return Add(key, std::to_string(value));
}

ResultBuilder& ResultBuilder::AddAmount(std::string_view key, double value) {
  return Add(key, FormatAmount(value));
}

ResultBuilder& ResultBuilder::Row() {
  text_.append(" |");
  return *this;
}

std::optional<std::string> ParsedResult::Get(std::string_view key) const {
  return FieldValue(summary, key);
}

std::optional<std::string> FieldValue(const Fields& fields, std::string_view key) {
  for (const auto& [k, v] : fields) {
    if (k == key) return v;
  }
  return std::nullopt;
}

std::optional<ParsedResult> ParseResult(std::string_view text) {
  const std::size_t colon = text.find(": ");
  if (colon == std::string_view::npos || colon == 0) return std::nullopt;
  ParsedResult r;
  r.status = std::string(text.substr(0, colon));
  if (r.status.find(' ') != std::string::npos) return std::nullopt;
  const auto segments = SplitSegments(text.substr(colon + 2));
  for (std::size_t s = 0; s < segments.size(); ++s) {
    Fields fields;
    for (auto& t : Tokenize(segments[s])) {
      if (!t.has_value) {
        if (s == 0 && r.verb.empty() && fields.empty()) {
          r.verb = t.key;
          continue;
        }
        // Stray bare words (free text) are kept under an empty key.
        fields.emplace_back("", t.key);
        continue;
      }
      fields.emplace_back(std::move(t.key), std::move(t.value));
    }
    if (s == 0) r.summary = std::move(fields);
    else r.rows.push_back(std::move(fields));
  }
  return r;
}

std::string QuoteValue(std::string_view value) {
  if (!NeedsQuotes(value)) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n' || c == '\t') c = ' ';
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string RenameKeys(std::string_view text,
                       const std::map<std::string, std::string, std::less<>>& renames) {
  std::string out;
  out.reserve(text.size() + 16);
  bool quoted = false;
  bool token_start = true;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (quoted) {
      out.push_back(c);
      if (c == '\\' && i + 1 < text.size()) out.push_back(text[++i]);
      else if (c == '"') quoted = false;
      ++i;
      continue;
    }
    if (token_start && c != ' ') {
      std::size_t j = i;
      while (j < text.size() && text[j] != ' ' && text[j] != '=' && text[j] != '"') ++j;
      if (j < text.size() && text[j] == '=') {
        auto it = renames.find(text.substr(i, j - i));
        if (it != renames.end()) {
          out.append(it->second);
          i = j;
          token_start = false;
          continue;
        }
      }
    }
    token_start = (c == ' ');
    if (c == '"') quoted = true;
    out.push_back(c);
    ++i;
  }
  return out;
}

std::string FormatAmount(double value) {
  const double r = RoundCents(value);
  char buf[64];
  if (std::fabs(r - std::round(r)) < 1e-9 && std::fabs(r) < 1e15) {
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(std::llround(r)));
  } else {
    std::snprintf(buf, sizeof buf, "%.2f", r);
  }
  return buf;
}

double RoundCents(double value) { return std::round(value * 100.0) / 100.0; }

}  // namespace relsurf
