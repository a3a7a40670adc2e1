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

#include "relsurf/episode_log.h"

#include <string>

#include "relsurf/errors.h"

namespace relsurf {

std::string EncodeRecordLine(const EpisodeRecord& record) {
  // Invalid UTF-8 from a model backend is replaced rather than rejected.
  std::string line = RecordToJson(record).dump(-1, ' ', false,
                                               nlohmann::json::error_handler_t::replace);
  line.push_back('\n');
  return line;
}

void WriteEpisodeLog(const std::vector<EpisodeRecord>& records,
                     const std::filesystem::path& path) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    std::string problem = CheckRecordInvariants(records[i]);
    if (!problem.empty()) {
      throw ValidationError("record " + std::to_string(i) + ": " + problem);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  for (const auto& r : records) out << EncodeRecordLine(r);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<EpisodeRecord> ReadEpisodeLog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<EpisodeRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(line_no, e.what());
    }
    EpisodeRecord r;
    try {
      r = RecordFromJson(j);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
    }
    std::string problem = CheckRecordInvariants(r);
    if (!problem.empty()) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + problem);
    }
    records.push_back(std::move(r));
  }
  return records;
}

LogAppender::LogAppender(const std::filesystem::path& path)
    : out_(path, std::ios::binary | std::ios::app) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for append");
}

void LogAppender::Append(const EpisodeRecord& record) {
  std::string line = EncodeRecordLine(record);
  std::lock_guard lock(mu_);
  out_ << line;
  out_.flush();
}

void LogAppender::Flush() {
  std::lock_guard lock(mu_);
  out_.flush();
}

}  // namespace relsurf
