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

#ifndef RELSURF_SRC_DOMAINS_INTERNAL_H_
#define RELSURF_SRC_DOMAINS_INTERNAL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relsurf/domains.h"
#include "relsurf/rng.h"

namespace relsurf::internal {

// Argument accessors. Arguments have already passed ValidateArgs, so a
// missing optional argument reads as empty.
std::string ArgStr(const ToolArgs& args, std::string_view name);
std::optional<double> ArgNum(const ToolArgs& args, std::string_view name);

std::string Lower(std::string_view s);
std::string TrimCopy(std::string_view s);
// Lowercase, trimmed, inner whitespace collapsed.
std::string NormalizeText(std::string_view s);

// "T-10" sorts after "T-9".
bool NaturalIdLess(std::string_view a, std::string_view b);

std::string ErrorText(std::string_view verb, std::string_view reason);

std::string ApplyScheduling(SchedulingState& s, std::string_view tool, const ToolArgs& args);
std::string ApplyTravel(TravelState& s, std::string_view tool, const ToolArgs& args);
std::string ApplySupport(SupportState& s, std::string_view tool, const ToolArgs& args);
std::string ApplyEcommerce(EcommerceState& s, std::string_view tool, const ToolArgs& args);

std::vector<TaskSpec> SchedulingSuite(Rng& rng);
std::vector<TaskSpec> TravelSuite(Rng& rng);
std::vector<TaskSpec> SupportSuite(Rng& rng);
std::vector<TaskSpec> EcommerceSuite(Rng& rng);

// Picks one element uniformly.
template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& v) {
  return v[rng.Below(v.size())];
}

// Draws n distinct indices from [0, size) in draw order.
std::vector<std::size_t> Sample(Rng& rng, std::size_t size, std::size_t n);

}  // namespace relsurf::internal

#endif  // RELSURF_SRC_DOMAINS_INTERNAL_H_
