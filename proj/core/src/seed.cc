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

#include "relsurf/seed.h"

#include <bit>
#include <cstring>

#include "relsurf/rng.h"

namespace relsurf {
namespace {

// FNV-1a over a length-prefixed encoding, finished with a SplitMix64 round.
class StableHasher {
 public:
  void Bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h_ ^= p[i];
      h_ *= 0x100000001b3ULL;
    }
  }
  void U64(std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    Bytes(buf, sizeof(buf));
  }
  void Str(std::string_view s) {
    U64(s.size());
    Bytes(s.data(), s.size());
  }
  void Real(double d) {
    if (d == 0.0) d = 0.0;  // fold -0.0
    U64(std::bit_cast<std::uint64_t>(d));
  }
  std::uint64_t Finish() const { return SplitMix64(h_); }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t DeriveEpisodeSeed(std::uint64_t global_seed,
                                std::string_view task_id, double epsilon,
                                double lambda_level, std::string_view agent_id,
                                std::uint32_t trial_index) {
  StableHasher h;
  h.U64(global_seed);
  h.Str(task_id);
  h.Real(epsilon);
  h.Real(lambda_level);
  h.Str(agent_id);
  h.U64(trial_index);
  return h.Finish();
}

std::uint64_t DerivePerturbationSeed(std::uint64_t global_seed,
                                     std::string_view task_id, double epsilon) {
  StableHasher h;
  h.Str("perturbation");
  h.U64(global_seed);
  h.Str(task_id);
  h.Real(epsilon);
  return h.Finish();
}

}  // namespace relsurf
