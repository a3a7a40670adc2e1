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

#ifndef RELSURF_SEED_H_
#define RELSURF_SEED_H_

#include <cstdint>
#include <string_view>

namespace relsurf {

// Stable 64-bit hash of the episode coordinates. Identical inputs give the
// identical seed on every platform; any field change gives a new seed.
std::uint64_t DeriveEpisodeSeed(std::uint64_t global_seed,
                                std::string_view task_id, double epsilon,
                                double lambda_level, std::string_view agent_id,
                                std::uint32_t trial_index);

// Seed for the perturbed task text at one (task, epsilon) grid point. Shared
// by all trials, agents and lambda levels so they see the same wording.
std::uint64_t DerivePerturbationSeed(std::uint64_t global_seed,
                                     std::string_view task_id, double epsilon);

}  // namespace relsurf

#endif  // RELSURF_SEED_H_
