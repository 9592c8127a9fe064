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

#include "spim/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spim/error.hpp"

namespace spim {

namespace {

int isqrt_exact(std::size_t n) {
  const int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  for (int c : {s - 1, s, s + 1}) {
    if (c >= 0 && static_cast<std::size_t>(c) * c == n) return c;
  }
  return -1;
}

}  // namespace

double NppInstance::sum_numbers() const {
  double s = 0.0;
  for (double v : numbers) s += v;
  return s;
}

double NppInstance::sum_zeta() const {
  double s = 0.0;
  for (double v : zeta) s += v;
  return s;
}

SpinConfig SpinConfig::from_signs(std::span<const std::int8_t> signs) {
  const int side = isqrt_exact(signs.size());
  if (side < 0) {
    throw GeometryError("spin count " + std::to_string(signs.size()) +
                        " is not a perfect square");
  }
  SpinConfig cfg;
  cfg.side = side;
  cfg.spins.assign(signs.begin(), signs.end());
  return cfg;
}

SpinConfig SpinConfig::filled(int side, std::int8_t value) {
  SpinConfig cfg;
  cfg.side = side;
  cfg.spins.assign(static_cast<std::size_t>(side) * side, value);
  return cfg;
}

SpinConfig SpinConfig::checkerboard(int side) {
  SpinConfig cfg;
  cfg.side = side;
  cfg.spins.resize(static_cast<std::size_t>(side) * side);
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      cfg.at(r, c) = ((r + c) % 2 == 0) ? std::int8_t{1} : std::int8_t{-1};
    }
  }
  return cfg;
}

double round_significant(double value, int digits) {
  if (digits >= 17 || value == 0.0) return value;
  const double exponent = std::floor(std::log10(std::fabs(value)));
  const double scale = std::pow(10.0, digits - 1 - exponent);
  return std::round(value * scale) / scale;
}

NppInstance normalize_instance(std::vector<double> numbers, int precision_digits) {
  if (numbers.size() < 2) {
    throw InvalidInstance("instance needs at least 2 numbers, got " +
                          std::to_string(numbers.size()));
  }
  if (precision_digits < 1) {
    throw InvalidInstance("precision_digits must be >= 1");
  }
  double largest = 0.0;
  for (double v : numbers) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidInstance("all numbers must be positive and finite");
    }
    largest = std::max(largest, v);
  }

  NppInstance inst;
  inst.numbers = std::move(numbers);
  inst.precision_digits = precision_digits;
  inst.zeta.reserve(inst.numbers.size());
  inst.alpha.reserve(inst.numbers.size());
  for (double v : inst.numbers) {
    const double z = round_significant(v / largest, precision_digits);
    inst.zeta.push_back(z);
    inst.alpha.push_back(std::acos(std::min(1.0, z)));
  }
  return inst;
}

double mattis_hamiltonian(const NppInstance& inst, std::span<const std::int8_t> spins) {
  if (spins.size() != inst.zeta.size()) {
    throw DimensionError("instance size " + std::to_string(inst.zeta.size()) +
                         " != spin count " + std::to_string(spins.size()));
  }
  double m = 0.0;
  for (std::size_t j = 0; j < spins.size(); ++j) m += inst.zeta[j] * spins[j];
  return m * m;
}

double mattis_hamiltonian(const NppInstance& inst, const SpinConfig& cfg) {
  return mattis_hamiltonian(inst, std::span<const std::int8_t>(cfg.spins));
}

double fidelity(const NppInstance& inst, std::span<const std::int8_t> spins) {
  if (spins.size() != inst.zeta.size()) {
    throw DimensionError("instance size " + std::to_string(inst.zeta.size()) +
                         " != spin count " + std::to_string(spins.size()));
  }
  double m = 0.0;
  for (std::size_t j = 0; j < spins.size(); ++j) m += inst.zeta[j] * spins[j];
  return fidelity_from_sum(inst, m);
}

double fidelity(const NppInstance& inst, const SpinConfig& cfg) {
  return fidelity(inst, std::span<const std::int8_t>(cfg.spins));
}

double fidelity_from_sum(const NppInstance& inst, double signed_sum) {
  return std::fabs(signed_sum) / inst.sum_zeta();
}

std::vector<double> effective_amplitudes(const NppInstance& inst,
                                         const AdiabaticSchedule& sched, int t) {
  if (sched.total_steps < 1) {
    throw ScheduleError("total_steps must be >= 1");
  }
  if (t < 0 || t > sched.total_steps) {
    throw ScheduleError("step " + std::to_string(t) + " outside [0, " +
                        std::to_string(sched.total_steps) + "]");
  }
  std::vector<double> amps(inst.alpha.size());
  if (t == sched.total_steps) {
    // cos(alpha_j) == zeta_j; return the stored values so the endpoint is exact.
    std::copy(inst.zeta.begin(), inst.zeta.end(), amps.begin());
    return amps;
  }
  const double frac = static_cast<double>(t) / sched.total_steps;
  for (std::size_t j = 0; j < amps.size(); ++j) {
    amps[j] = std::cos(frac * inst.alpha[j]);
  }
  return amps;
}

std::pair<double, double> partition_sums(const NppInstance& inst,
                                         std::span<const std::int8_t> spins) {
  if (spins.size() != inst.numbers.size()) {
    throw DimensionError("instance size " + std::to_string(inst.numbers.size()) +
                         " != spin count " + std::to_string(spins.size()));
  }
  double up = 0.0;
  double down = 0.0;
  for (std::size_t j = 0; j < spins.size(); ++j) {
    (spins[j] > 0 ? up : down) += inst.numbers[j];
  }
  return {up, down};
}

std::pair<double, double> partition_sums(const NppInstance& inst, const SpinConfig& cfg) {
  return partition_sums(inst, std::span<const std::int8_t>(cfg.spins));
}

}  // namespace spim
