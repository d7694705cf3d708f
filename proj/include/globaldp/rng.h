// Copyright 2026 The GlobalDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLOBALDP_RNG_H_
#define GLOBALDP_RNG_H_

#include <cstdint>
#include <random>

namespace globaldp {

using Rng = std::mt19937_64;

// Purpose tags that keep the random streams of one run disjoint.
enum class Stream : std::uint64_t {
  kSplit = 1,
  kLocalTrain = 2,
  kClientNoise = 3,
  kServerNoise = 4,
  kCentralized = 5,
};

// SplitMix64 finalizer.
std::uint64_t Mix64(std::uint64_t x);

// Seed for the stream (master, purpose, client, round). Each stream depends
// only on its own coordinates, so execution order never changes a draw.
std::uint64_t DeriveSeed(std::uint64_t master, Stream purpose,
                         std::uint64_t client, std::uint64_t round);

inline Rng MakeStream(std::uint64_t master, Stream purpose,
                      std::uint64_t client, std::uint64_t round) {
  return Rng(DeriveSeed(master, purpose, client, round));
}

}  // namespace globaldp

#endif  // GLOBALDP_RNG_H_
