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

#include "spim/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spim/error.hpp"
#include "spim/rng.hpp"

namespace spim::bench {

namespace {

// Signs for spins 1..n-1 from the Gray code of k (spin 0 fixed +1).
std::vector<std::int8_t> signs_from_gray(std::uint64_t k, int n) {
  const std::uint64_t gray = k ^ (k >> 1);
  std::vector<std::int8_t> signs(n, 1);
  for (int j = 1; j < n; ++j) {
    if ((gray >> (j - 1)) & 1ull) signs[j] = -1;
  }
  return signs;
}

double signed_sum(const NppInstance& inst, const std::vector<std::int8_t>& signs) {
  double m = 0.0;
  for (std::size_t j = 0; j < signs.size(); ++j) m += inst.zeta[j] * signs[j];
  return m;
}

}  // namespace

NppInstance gen_instance(int n, int digits, std::uint64_t seed) {
  if (n < 2) throw InvalidArgument("instance size must be >= 2, got " + std::to_string(n));
  if (digits < 1 || digits > 8) {
    throw InvalidArgument("digits must be in [1, 8], got " + std::to_string(digits));
  }
  std::mt19937_64 gen(seed);
  std::vector<double> numbers(n);
  for (int i = 0; i < n; ++i) {
    numbers[i] = round_significant(rng::uniform_pos(gen), digits);
  }
  return normalize_instance(std::move(numbers), digits);
}

PartitionResult exhaustive_best(const NppInstance& inst) {
  const int n = inst.size();
  if (n > kExhaustiveLimit) {
    throw TooLarge("exhaustive search capped at n = " + std::to_string(kExhaustiveLimit) +
                   ", got " + std::to_string(n));
  }
  const std::uint64_t count = 1ull << (n - 1);

  // Fixed chunk layout (independent of thread count) so the scan and its
  // tie-breaking are reproducible under any parallel schedule. Restarting
  // the running sum at each chunk also keeps the incremental float drift
  // far below the spacing of distinct residuals.
  const std::uint64_t chunk_size = 32768;
  const std::uint64_t chunks = (count + chunk_size - 1) / chunk_size;
  std::vector<double> chunk_best(chunks);
  std::vector<std::uint64_t> chunk_arg(chunks);

#pragma omp parallel for schedule(static)
  for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
    const std::uint64_t begin = static_cast<std::uint64_t>(c) * chunk_size;
    const std::uint64_t end = std::min(count, begin + chunk_size);
    std::vector<std::int8_t> signs = signs_from_gray(begin, n);
    double m = signed_sum(inst, signs);
    double best = std::fabs(m);
    std::uint64_t arg = begin;
    for (std::uint64_t k = begin + 1; k < end; ++k) {
      // Gray step: bit ctz(k) of the code flips, i.e. spin ctz(k)+1.
      const int j = std::countr_zero(k) + 1;
      m -= 2.0 * signs[j] * inst.zeta[j];
      signs[j] = static_cast<std::int8_t>(-signs[j]);
      const double a = std::fabs(m);
      if (a < best) {
        best = a;
        arg = k;
      }
    }
    chunk_best[c] = best;
    chunk_arg[c] = arg;
  }

  std::uint64_t arg = chunk_arg[0];
  double best = chunk_best[0];
  for (std::uint64_t c = 1; c < chunks; ++c) {
    if (chunk_best[c] < best) {
      best = chunk_best[c];
      arg = chunk_arg[c];
    }
  }

  PartitionResult result;
  result.signs = signs_from_gray(arg, n);
  result.fidelity = fidelity(inst, result.signs);
  return result;
}

PartitionResult karmarkar_karp(const NppInstance& inst) {
  const int n = inst.size();

  // Difference tree: merging nodes a >= b replaces them by (a - b) with a
  // keeping the parent sign and b taking the opposite.
  struct Node {
    double value;
    int left = -1;   // same sign as this node
    int right = -1;  // opposite sign
  };
  std::vector<Node> nodes;
  nodes.reserve(2 * n);
  using Entry = std::pair<double, int>;  // (value, -node id): ties pop FIFO
  std::priority_queue<Entry> heap;
  for (int j = 0; j < n; ++j) {
    nodes.push_back(Node{inst.zeta[j]});
    heap.push({inst.zeta[j], -j});
  }
  while (heap.size() > 1) {
    const Entry a = heap.top();
    heap.pop();
    const Entry b = heap.top();
    heap.pop();
    const int id = static_cast<int>(nodes.size());
    nodes.push_back(Node{a.first - b.first, -a.second, -b.second});
    heap.push({a.first - b.first, -id});
  }

  PartitionResult result;
  result.signs.assign(n, 1);
  // Propagate signs from the root without recursion.
  std::vector<std::pair<int, std::int8_t>> stack{{-heap.top().second, 1}};
  while (!stack.empty()) {
    const auto [id, sign] = stack.back();
    stack.pop_back();
    const Node& node = nodes[id];
    if (node.left < 0) {
      result.signs[id] = sign;
    } else {
      stack.push_back({node.left, sign});
      stack.push_back({node.right, static_cast<std::int8_t>(-sign)});
    }
  }
  result.fidelity = fidelity(inst, result.signs);
  return result;
}

PartitionResult random_search_best(const NppInstance& inst, long samples,
                                   std::uint64_t seed) {
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  const int n = inst.size();
  std::mt19937_64 gen(seed);

  std::vector<std::int8_t> signs(n);
  std::vector<std::int8_t> best_signs;
  double best = -1.0;
  for (long s = 0; s < samples; ++s) {
    std::uint64_t bits = 0;
    int remaining = 0;
    double m = 0.0;
    for (int j = 0; j < n; ++j) {
      if (remaining == 0) {
        bits = gen();
        remaining = 64;
      }
      signs[j] = (bits & 1ull) ? std::int8_t{1} : std::int8_t{-1};
      bits >>= 1;
      --remaining;
      m += inst.zeta[j] * signs[j];
    }
    const double a = std::fabs(m);
    if (best < 0.0 || a < best) {
      best = a;
      best_signs = signs;
    }
  }

  PartitionResult result;
  result.signs = std::move(best_signs);
  result.fidelity = fidelity(inst, result.signs);
  return result;
}

}  // namespace spim::bench
