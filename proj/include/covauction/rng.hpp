// Copyright 2026 The Authors.
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

#ifndef COVAUCTION_RNG_HPP_
#define COVAUCTION_RNG_HPP_

#include <cstdint>

namespace covauction {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so any draw can be reproduced in isolation and
// parallel consumers never share state. The mixer is the SplitMix64
// finalizer applied twice; output is identical on every platform.
namespace rng {

inline std::uint64_t Mix(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t Bits(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter) {
  return Mix(Mix(seed ^ 0x6A09E667F3BCC909ULL * (stream + 1)) ^
             0xBB67AE8584CAA73BULL * (counter + 1));
}

// Uniform double in [0, 1) with 53 random bits.
inline double Uniform(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t counter) {
  return static_cast<double>(Bits(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Labeled sub-streams. Modules combine a tag with a local index so that
// independent uses of the same master seed never collide.
enum Stream : std::uint64_t {
  kPointAssignment = 0x0100000000ULL,  // + point index
  kBurnDraw = 0x0200000000ULL,         // + bidder index
  kTrialSeed = 0x0300000000ULL,        // + trial index
  kCoordinates = 0x0400000000ULL,
  kTypeDraw = 0x0500000000ULL,
  kWeightDraw = 0x0600000000ULL,
  kRadiusCoefficient = 0x0700000000ULL,
  kClassAssignment = 0x0800000000ULL,
  kRadiusSample = 0x0900000000ULL,
  kInstanceSeed = 0x0A00000000ULL,  // + instance index within an experiment
  kProfileSample = 0x0B00000000ULL,
};

// Seed for an independent derived task (Monte Carlo trial, experiment
// instance, ...).
inline std::uint64_t DeriveSeed(std::uint64_t master, Stream tag,
                                std::uint64_t index) {
  return Bits(master, tag + index, 0);
}

}  // namespace rng
}  // namespace covauction

#endif  // COVAUCTION_RNG_HPP_
