// Copyright 2026 The QCQO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace qcqo {

using Seed = std::uint64_t;

/// All randomness in the library comes from std::mt19937_64. Seeds for
/// sub-streams (iteration t of run r, read k of an annealing call) are derived
/// with the SplitMix64 finalizer so neighbouring seeds give unrelated streams.
using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives the seed of sub-stream `index` from `parent`.
constexpr Seed derive_seed(Seed parent, std::uint64_t index) noexcept {
    return splitmix64(splitmix64(parent) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

inline Engine make_engine(Seed seed) { return Engine(splitmix64(seed)); }

}  // namespace qcqo
