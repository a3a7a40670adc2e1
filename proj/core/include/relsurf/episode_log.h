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

#ifndef RELSURF_EPISODE_LOG_H_
#define RELSURF_EPISODE_LOG_H_

#include <filesystem>
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include "relsurf/records.h"

namespace relsurf {

// One JSON object per line, keys sorted, terminated by '\n'.
std::string EncodeRecordLine(const EpisodeRecord& record);

// Validates every record before writing; throws ValidationError.
void WriteEpisodeLog(const std::vector<EpisodeRecord>& records,
                     const std::filesystem::path& path);

// Throws ParseError (with 1-based line number) on malformed JSON and
// ValidationError when a parsed record violates an invariant.
std::vector<EpisodeRecord> ReadEpisodeLog(const std::filesystem::path& path);

// Serialized append channel shared by concurrent episode workers.
class LogAppender {
 public:
  explicit LogAppender(const std::filesystem::path& path);

  void Append(const EpisodeRecord& record);
  void Flush();

 private:
  std::mutex mu_;
  std::ofstream out_;
};

}  // namespace relsurf

#endif  // RELSURF_EPISODE_LOG_H_
