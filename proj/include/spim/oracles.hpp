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

#ifndef SPIM_ORACLES_HPP
#define SPIM_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "spim/core.hpp"

namespace spim::bench {

// Sign assignment plus its fidelity; fidelity recomputed from the signs so
// callers can cross-check it directly.
struct PartitionResult {
  std::vector<std::int8_t> signs;
  double fidelity = 0.0;
};

// Deterministic random instance: n uniform draws in (0, 1] rounded to
// `digits` significant digits, then normalized (amplitudes carry the same
// digit budget).
NppInstance gen_instance(int n, int digits, std::uint64_t seed);

// Exact minimum-fidelity assignment by Gray-code enumeration with sign 0
// fixed to +1. Chunked so OpenMP sweeps give identical results for any
// thread count. Throws TooLarge above n = 24.
PartitionResult exhaustive_best(const NppInstance& inst);
constexpr int kExhaustiveLimit = 24;

// Largest-differencing (Karmarkar-Karp) heuristic with sign reconstruction
// through the difference tree. O(n log n).
PartitionResult karmarkar_karp(const NppInstance& inst);

// Best of `samples` uniform random assignments; the stand-in optimum proxy
// where exhaustive enumeration is out of reach.
PartitionResult random_search_best(const NppInstance& inst, long samples,
                                   std::uint64_t seed);

}  // namespace spim::bench

#endif  // SPIM_ORACLES_HPP
