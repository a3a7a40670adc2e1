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

#ifndef RELSURF_RESULT_TEXT_H_
#define RELSURF_RESULT_TEXT_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace relsurf {

// Tool results are single lines of the form
//
//   <status>: <verb> key=value key=value | key=value ... | key=value ...
//
// where the first segment carries summary fields and every following
// segment is one row. Values containing spaces, quotes, '|' or '=' are
// double-quoted with backslash escapes.
using Fields = std::vector<std::pair<std::string, std::string>>;

class ResultBuilder {
 public:
  ResultBuilder(std::string_view status, std::string_view verb);

  ResultBuilder& Add(std::string_view key, std::string_view value);
  ResultBuilder& Add(std::string_view key, long long value);
  ResultBuilder& AddAmount(std::string_view key, double value);
  // Starts a new row segment.
  ResultBuilder& Row();

  std::string str() const { return text_; }

 private:
  std::string text_;
};

struct ParsedResult {
  std::string status;  // "ok", "error", "flights", ...
  std::string verb;
  Fields summary;
  std::vector<Fields> rows;

  std::optional<std::string> Get(std::string_view key) const;
};

std::optional<ParsedResult> ParseResult(std::string_view text);
std::optional<std::string> FieldValue(const Fields& fields, std::string_view key);

std::string QuoteValue(std::string_view value);

// Renames every key=... token whose key is in the map; quoted values are
// left untouched.
std::string RenameKeys(std::string_view text,
                       const std::map<std::string, std::string, std::less<>>& renames);

// Integral amounts print without decimals, others with two.
std::string FormatAmount(double value);
double RoundCents(double value);

}  // namespace relsurf

#endif  // RELSURF_RESULT_TEXT_H_
