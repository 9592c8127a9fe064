// Copyright 2026 The spim-sim Authors.
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

#ifndef SPIM_RNG_HPP
#define SPIM_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace spim::rng {

// splitmix64 finalizer; full-avalanche 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based draw keyed by (seed, frame, element, stream). Evaluation
// order and thread layout never enter the stream, so noise realizations are
// reproducible under any parallel schedule.
constexpr std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t frame,
                                     std::uint64_t element, std::uint64_t stream) {
  std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ull);
  h = mix64(h ^ frame);
  h = mix64(h ^ element);
  h = mix64(h ^ (stream * 0x452821e638d01377ull + 1));
  return h;
}

// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double counter_uniform(std::uint64_t seed, std::uint64_t frame,
                              std::uint64_t element, std::uint64_t stream) {
  return to_unit(counter_bits(seed, frame, element, stream));
}

// Standard normal via Box-Muller on two decorrelated counter draws.
inline double counter_gaussian(std::uint64_t seed, std::uint64_t frame,
                               std::uint64_t element, std::uint64_t stream) {
  const double u1 = to_unit(counter_bits(seed, frame, element, stream * 2 + 11));
  const double u2 = to_unit(counter_bits(seed, frame, element, stream * 2 + 12));
  const double r = std::sqrt(-2.0 * std::log1p(-u1));  // u1 in [0,1) -> 1-u1 in (0,1]
  return r * std::cos(2.0 * M_PI * u2);
}

// Sequential helpers on std::mt19937_64. The engine's output sequence is
// pinned by the standard; distributions are hand-rolled because the library
// distribution algorithms are implementation-defined.
inline double uniform01(std::mt19937_64& gen) {
  return to_unit(gen());
}

// Uniform in (0, 1].
inline double uniform_pos(std::mt19937_64& gen) {
  return 1.0 - uniform01(gen);
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % n;
}

inline double gaussian(std::mt19937_64& gen) {
  const double u1 = uniform_pos(gen);
  const double u2 = uniform01(gen);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace spim::rng

#endif  // SPIM_RNG_HPP
