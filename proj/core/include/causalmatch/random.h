// Copyright 2026 The causalmatch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAUSALMATCH_RANDOM_H_
#define CAUSALMATCH_RANDOM_H_

#include <cstdint>
#include <initializer_list>
#include <random>

namespace causalmatch {

using Rng = std::mt19937_64;

// SplitMix64 finalizer. Used to derive independent sub-streams from a user
// seed so that, e.g., row i of a sampling loop does not depend on how many
// draws rows 0..i-1 consumed.
constexpr std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t MixSeed(std::uint64_t seed,
                                std::initializer_list<std::uint64_t> streams) {
  std::uint64_t h = MixSeed(seed);
  for (std::uint64_t s : streams) h = MixSeed(h ^ MixSeed(s + 0x51ed27ULL));
  return h;
}

inline Rng MakeRng(std::uint64_t seed,
                   std::initializer_list<std::uint64_t> streams = {}) {
  return Rng(MixSeed(seed, streams));
}

}  // namespace causalmatch

#endif  // CAUSALMATCH_RANDOM_H_
