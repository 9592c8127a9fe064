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

#ifndef SPIM_CORE_HPP
#define SPIM_CORE_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace spim {

// A two-way number-partitioning instance. `zeta` holds the values divided by
// the largest (so max(zeta) == 1 exactly) and `alpha` the phase encoding
// alpha_j = arccos(zeta_j). Amplitudes are rounded to `precision_digits`
// significant digits, mirroring the 8-digit limit of the modulator's
// floating-point interface; pass digits >= 17 to keep full precision.
struct NppInstance {
  std::vector<double> numbers;
  std::vector<double> zeta;
  std::vector<double> alpha;
  int precision_digits = 8;

  int size() const { return static_cast<int>(numbers.size()); }
  double sum_numbers() const;
  double sum_zeta() const;
};

// Square lattice of binary spins, values exactly -1 or +1, row-major.
struct SpinConfig {
  int side = 0;
  std::vector<std::int8_t> spins;

  int count() const { return static_cast<int>(spins.size()); }
  std::int8_t& at(int row, int col) { return spins[static_cast<std::size_t>(row) * side + col]; }
  std::int8_t at(int row, int col) const { return spins[static_cast<std::size_t>(row) * side + col]; }

  // Wraps a flat sign vector; its length must be a perfect square.
  static SpinConfig from_signs(std::span<const std::int8_t> signs);
  static SpinConfig filled(int side, std::int8_t value);
  static SpinConfig checkerboard(int side);
};

// Stepwise morph of the coupling amplitudes from the all-equal instance
// (t = 0) to the target instance (t = total_steps).
struct AdiabaticSchedule {
  int total_steps = 64;       // K
  int settle_iterations = 32; // Metropolis iterations per step
  int step_index = 0;         // cursor t in [0..K], advanced by the driver
};

// Rounds to `digits` significant decimal digits. digits >= 17 is an identity.
double round_significant(double value, int digits);

// Builds an instance from raw positive numbers. Throws InvalidInstance on
// empty/too-short input or any non-positive or non-finite entry.
NppInstance normalize_instance(std::vector<double> numbers, int precision_digits = 8);

// Mattis energy (sum_j zeta_j sigma_j)^2, evaluated as the squared single
// sum. Equals the full double sum over coupling pairs.
double mattis_hamiltonian(const NppInstance& inst, std::span<const std::int8_t> spins);
double mattis_hamiltonian(const NppInstance& inst, const SpinConfig& cfg);

// Partition fidelity |sum zeta*sigma| / sum zeta, in [0, 1]; 0 means a
// perfect partition.
double fidelity(const NppInstance& inst, std::span<const std::int8_t> spins);
double fidelity(const NppInstance& inst, const SpinConfig& cfg);

// Fidelity from a precomputed signed amplitude sum.
double fidelity_from_sum(const NppInstance& inst, double signed_sum);

// Amplitudes cos(t * alpha_j / K) at schedule step t. t = 0 gives all ones,
// t = K recovers zeta exactly. Throws ScheduleError for t outside [0, K].
std::vector<double> effective_amplitudes(const NppInstance& inst,
                                         const AdiabaticSchedule& sched, int t);

// Decodes spins into the two subsets' raw-number sums (+1 side, -1 side).
std::pair<double, double> partition_sums(const NppInstance& inst,
                                         std::span<const std::int8_t> spins);
std::pair<double, double> partition_sums(const NppInstance& inst, const SpinConfig& cfg);

}  // namespace spim

#endif  // SPIM_CORE_HPP
