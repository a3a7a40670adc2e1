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

#ifndef RELSURF_IDS_H_
#define RELSURF_IDS_H_

#include <array>
#include <optional>
#include <string_view>

namespace relsurf {

enum class FaultId {
  kTransientTimeout,
  kConnectionReset,
  kHighLatency,
  kSoftRateLimit,
  kHardRateLimit,
  kPartialResponse,
  kSchemaDrift,
  kStaleData,
  kEmptyResponse,
  kCascadingFailure,
};

inline constexpr std::array<FaultId, 10> kAllFaults = {
    FaultId::kTransientTimeout, FaultId::kConnectionReset,
    FaultId::kHighLatency,      FaultId::kSoftRateLimit,
    FaultId::kHardRateLimit,    FaultId::kPartialResponse,
    FaultId::kSchemaDrift,      FaultId::kStaleData,
    FaultId::kEmptyResponse,    FaultId::kCascadingFailure,
};

std::string_view ToString(FaultId id);
std::optional<FaultId> ParseFaultId(std::string_view name);

enum class MrId {
  kSynonym,
  kParaphrase,
  kVoice,
  kReordering,
  kSplitMerge,
  kDistractor,
  kCorrection,
  kDateFormat,
  kRelativeTime,
};

inline constexpr std::array<MrId, 9> kAllMrs = {
    MrId::kSynonym,    MrId::kParaphrase, MrId::kVoice,
    MrId::kReordering, MrId::kSplitMerge, MrId::kDistractor,
    MrId::kCorrection, MrId::kDateFormat, MrId::kRelativeTime,
};

std::string_view ToString(MrId id);
std::optional<MrId> ParseMrId(std::string_view name);

}  // namespace relsurf

#endif  // RELSURF_IDS_H_
