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

#include "relsurf/ids.h"

namespace relsurf {

std::string_view ToString(FaultId id) {
  switch (id) {
    case FaultId::kTransientTimeout: return "TransientTimeout";
    case FaultId::kConnectionReset: return "ConnectionReset";
    case FaultId::kHighLatency: return "HighLatency";
    case FaultId::kSoftRateLimit: return "SoftRateLimit";
    case FaultId::kHardRateLimit: return "HardRateLimit";
    case FaultId::kPartialResponse: return "PartialResponse";
    case FaultId::kSchemaDrift: return "SchemaDrift";
    case FaultId::kStaleData: return "StaleData";
    case FaultId::kEmptyResponse: return "EmptyResponse";
    case FaultId::kCascadingFailure: return "CascadingFailure";
  }
  return "?";
}

std::optional<FaultId> ParseFaultId(std::string_view name) {
  for (FaultId id : kAllFaults) {
    if (ToString(id) == name) return id;
  }
  return std::nullopt;
}

std::string_view ToString(MrId id) {
  switch (id) {
    case MrId::kSynonym: return "Synonym";
    case MrId::kParaphrase: return "Paraphrase";
    case MrId::kVoice: return "Voice";
    case MrId::kReordering: return "Reordering";
    case MrId::kSplitMerge: return "SplitMerge";
    case MrId::kDistractor: return "Distractor";
    case MrId::kCorrection: return "Correction";
    case MrId::kDateFormat: return "DateFormat";
    case MrId::kRelativeTime: return "RelativeTime";
  }
  return "?";
}

std::optional<MrId> ParseMrId(std::string_view name) {
  for (MrId id : kAllMrs) {
    if (ToString(id) == name) return id;
  }
  return std::nullopt;
}

}  // namespace relsurf
