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

#ifndef RELSURF_RNG_H_
#define RELSURF_RNG_H_

#include <cstdint>

namespace relsurf {

inline constexpr std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Well-known substreams carved out of one episode seed.
enum class RngStream : std::uint64_t {
  kFaults = 1,
  kPerturbation = 2,
  kAgent = 3,
  kTaskSuite = 4,
};

// Counter-based generator: value i of stream s under seed k is a pure
// function of (k, s, i), so draws never depend on platform or on how many
// values some other stream consumed.
class Rng {
 public:
  Rng(std::uint64_t seed, RngStream stream)
      : key_(SplitMix64(seed ^ SplitMix64(static_cast<std::uint64_t>(stream)))) {}
  explicit Rng(std::uint64_t seed) : key_(SplitMix64(seed)) {}

  std::uint64_t NextU64() { return SplitMix64(key_ + SplitMix64(counter_++)); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t Below(std::uint64_t n) {
    // Lemire-style rejection keeps the result unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = NextU64();
    } while (v >= limit);
    return v % n;
  }

  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace relsurf

#endif  // RELSURF_RNG_H_
