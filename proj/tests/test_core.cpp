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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "spim/core.hpp"
#include "spim/error.hpp"
#include "spim/rng.hpp"

using namespace spim;

namespace {

std::vector<double> random_numbers(int n, std::mt19937_64& gen) {
  std::vector<double> v(n);
  for (double& x : v) x = rng::uniform_pos(gen);
  return v;
}

std::vector<std::int8_t> random_signs(int n, std::mt19937_64& gen) {
  std::vector<std::int8_t> s(n);
  for (auto& x : s) x = (gen() & 1u) ? std::int8_t{1} : std::int8_t{-1};
  return s;
}

// O(n^2) double-sum oracle for the Mattis energy.
double mattis_double_sum(const NppInstance& inst, const std::vector<std::int8_t>& s) {
  double h = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      h += inst.zeta[i] * inst.zeta[j] * s[i] * s[j];
    }
  }
  return h;
}

}  // namespace

TEST_CASE("round_significant") {
  CHECK(round_significant(0.123456789, 8) == doctest::Approx(0.12345679).epsilon(1e-12));
  CHECK(round_significant(0.0444, 1) == doctest::Approx(0.04).epsilon(1e-12));
  CHECK(round_significant(1.0, 8) == 1.0);
  CHECK(round_significant(0.987654321, 17) == 0.987654321);
  CHECK(round_significant(0.0, 8) == 0.0);
}

TEST_CASE("normalize_instance on all-equal numbers") {
  const NppInstance inst = normalize_instance({2, 2, 2, 2});
  for (double z : inst.zeta) CHECK(z == 1.0);
  for (double a : inst.alpha) CHECK(a == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("normalize_instance forced by definition") {
  const NppInstance inst = normalize_instance({1, 2});
  CHECK(inst.zeta[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(inst.zeta[1] == 1.0);
  CHECK(inst.alpha[0] == doctest::Approx(std::acos(0.5)).epsilon(1e-15));
  CHECK(inst.alpha[1] == 0.0);
}

TEST_CASE("normalize_instance matches an independent recompute") {
  std::mt19937_64 gen(41);
  const std::vector<double> numbers = random_numbers(64, gen);
  const NppInstance inst = normalize_instance(numbers);

  double largest = 0.0;
  for (double v : numbers) largest = std::max(largest, v);
  double max_zeta = 0.0;
  for (int j = 0; j < 64; ++j) {
    const double expect = round_significant(numbers[j] / largest, 8);
    CHECK(inst.zeta[j] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(std::cos(inst.alpha[j]) == doctest::Approx(inst.zeta[j]).epsilon(1e-12));
    max_zeta = std::max(max_zeta, inst.zeta[j]);
  }
  CHECK(max_zeta == 1.0);
}

TEST_CASE("normalize_instance rejects bad input") {
  CHECK_THROWS_AS(normalize_instance({}), InvalidInstance);
  CHECK_THROWS_AS(normalize_instance({1.0}), InvalidInstance);
  CHECK_THROWS_AS(normalize_instance({1.0, 0.0}), InvalidInstance);
  CHECK_THROWS_AS(normalize_instance({1.0, -2.0}), InvalidInstance);
}

TEST_CASE("mattis_hamiltonian trivial values") {
  const NppInstance inst = normalize_instance(std::vector<double>(16, 3.0));
  CHECK(mattis_hamiltonian(inst, SpinConfig::filled(4, 1)) == doctest::Approx(256.0));
  CHECK(mattis_hamiltonian(inst, SpinConfig::checkerboard(4)) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(mattis_hamiltonian(inst, SpinConfig::filled(3, 1)), DimensionError);
}

TEST_CASE("mattis_hamiltonian equals the double-sum oracle") {
  std::mt19937_64 gen(7);
  for (int rep = 0; rep < 20; ++rep) {
    const NppInstance inst = normalize_instance(random_numbers(36, gen));
    const auto signs = random_signs(36, gen);
    const double fast = mattis_hamiltonian(inst, signs);
    const double oracle = mattis_double_sum(inst, signs);
    CHECK(fast == doctest::Approx(oracle).epsilon(1e-9));
  }
}

TEST_CASE("hamiltonian is invariant under global spin flip") {
  std::mt19937_64 gen(11);
  const NppInstance inst = normalize_instance(random_numbers(25, gen));
  auto signs = random_signs(25, gen);
  const double h = mattis_hamiltonian(inst, signs);
  for (auto& s : signs) s = static_cast<std::int8_t>(-s);
  CHECK(mattis_hamiltonian(inst, signs) == h);
}

TEST_CASE("fidelity trivial values") {
  const NppInstance pair = normalize_instance({1, 1});
  CHECK(fidelity(pair, std::vector<std::int8_t>{1, -1}) == 0.0);
  std::mt19937_64 gen(3);
  const NppInstance inst = normalize_instance(random_numbers(9, gen));
  CHECK(fidelity(inst, SpinConfig::filled(3, 1)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("fidelity squared times (sum zeta)^2 equals the hamiltonian") {
  std::mt19937_64 gen(13);
  for (int rep = 0; rep < 50; ++rep) {
    const NppInstance inst = normalize_instance(random_numbers(30, gen));
    const auto signs = random_signs(30, gen);
    const double eta = fidelity(inst, signs);
    const double z = inst.sum_zeta();
    const double h = mattis_hamiltonian(inst, signs);
    CHECK(eta * eta * z * z == doctest::Approx(h).epsilon(1e-9));
  }
}

TEST_CASE("fidelity of the exhaustive optimum matches a brute-force scan") {
  std::mt19937_64 gen(17);
  const int n = 20;
  const NppInstance inst = normalize_instance(random_numbers(n, gen));

  // Brute force over all 2^20 sign assignments.
  double best = 2.0;
  std::vector<std::int8_t> signs(n);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double m = 0.0;
    for (int j = 0; j < n; ++j) {
      m += ((mask >> j) & 1u) ? inst.zeta[j] : -inst.zeta[j];
    }
    best = std::min(best, std::fabs(m) / inst.sum_zeta());
  }

  // Grey out the sign vector achieving it via a second scan to validate the
  // fidelity function itself on a concrete optimum.
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double m = 0.0;
    for (int j = 0; j < n; ++j) {
      m += ((mask >> j) & 1u) ? inst.zeta[j] : -inst.zeta[j];
    }
    if (std::fabs(m) / inst.sum_zeta() == best) {
      for (int j = 0; j < n; ++j) {
        signs[j] = ((mask >> j) & 1u) ? std::int8_t{1} : std::int8_t{-1};
      }
      break;
    }
  }
  CHECK(fidelity(inst, signs) == doctest::Approx(best).epsilon(1e-12));
}

TEST_CASE("effective_amplitudes endpoints and the cos(pi/6) midpoint") {
  std::mt19937_64 gen(19);
  const NppInstance inst = normalize_instance(random_numbers(12, gen));
  AdiabaticSchedule sched;
  sched.total_steps = 8;

  const auto start = effective_amplitudes(inst, sched, 0);
  for (double a : start) CHECK(a == 1.0);
  const auto end = effective_amplitudes(inst, sched, 8);
  for (int j = 0; j < 12; ++j) CHECK(end[j] == inst.zeta[j]);

  // alpha = pi/3, K = 2, t = 1 -> cos(pi/6).
  const NppInstance half = normalize_instance({1.0, 2.0});
  AdiabaticSchedule two;
  two.total_steps = 2;
  CHECK(half.alpha[0] == doctest::Approx(M_PI / 3).epsilon(1e-12));
  const auto mid = effective_amplitudes(half, two, 1);
  CHECK(mid[0] == doctest::Approx(0.8660254037844387).epsilon(1e-12));

  CHECK_THROWS_AS(effective_amplitudes(inst, sched, -1), ScheduleError);
  CHECK_THROWS_AS(effective_amplitudes(inst, sched, 9), ScheduleError);
}

TEST_CASE("effective_amplitudes is monotone non-increasing in t") {
  std::mt19937_64 gen(23);
  const NppInstance inst = normalize_instance(random_numbers(10, gen));
  AdiabaticSchedule sched;
  sched.total_steps = 16;
  auto prev = effective_amplitudes(inst, sched, 0);
  for (int t = 1; t <= 16; ++t) {
    const auto cur = effective_amplitudes(inst, sched, t);
    for (int j = 0; j < 10; ++j) CHECK(cur[j] <= prev[j] + 1e-15);
    prev = cur;
  }
}

TEST_CASE("partition_sums") {
  const NppInstance pair = normalize_instance({3, 3});
  const auto [a1, b1] = partition_sums(pair, std::vector<std::int8_t>{1, -1});
  CHECK(a1 == 3.0);
  CHECK(b1 == 3.0);

  const NppInstance triple = normalize_instance({5, 2, 3});
  const auto [a2, b2] = partition_sums(triple, std::vector<std::int8_t>{1, -1, -1});
  CHECK(a2 == 5.0);
  CHECK(b2 == 5.0);

  std::mt19937_64 gen(29);
  const auto numbers = random_numbers(40, gen);
  // Full precision keeps the amplitudes proportional to the raw numbers, so
  // the residual identity holds at tight tolerance.
  const NppInstance inst = normalize_instance(numbers, 17);
  const auto signs = random_signs(40, gen);
  const auto [up, down] = partition_sums(inst, signs);
  double direct_up = 0.0;
  double direct_down = 0.0;
  double total = 0.0;
  for (int j = 0; j < 40; ++j) {
    (signs[j] > 0 ? direct_up : direct_down) += numbers[j];
    total += numbers[j];
  }
  CHECK(up == doctest::Approx(direct_up).epsilon(1e-12));
  CHECK(down == doctest::Approx(direct_down).epsilon(1e-12));
  CHECK(up + down == doctest::Approx(total).epsilon(1e-12));
  CHECK(std::fabs(up - down) ==
        doctest::Approx(fidelity(inst, signs) * total).epsilon(1e-9));
}

TEST_CASE("incremental signed-sum bookkeeping survives 1e5 flips") {
  std::mt19937_64 gen(31);
  const int n = 64;
  const NppInstance inst = normalize_instance(random_numbers(n, gen));
  auto signs = random_signs(n, gen);

  long double m = 0.0L;
  for (int j = 0; j < n; ++j) m += static_cast<long double>(signs[j]) * inst.zeta[j];

  for (int flip = 0; flip < 100000; ++flip) {
    const int j = static_cast<int>(rng::uniform_index(gen, n));
    m -= 2.0L * signs[j] * inst.zeta[j];
    signs[j] = static_cast<std::int8_t>(-signs[j]);
  }
  long double fresh = 0.0L;
  for (int j = 0; j < n; ++j) fresh += static_cast<long double>(signs[j]) * inst.zeta[j];
  CHECK(std::fabs(static_cast<double>(m - fresh)) < 1e-12);
}

TEST_CASE("SpinConfig shapes") {
  const std::vector<std::int8_t> nine(9, 1);
  const SpinConfig cfg = SpinConfig::from_signs(nine);
  CHECK(cfg.side == 3);
  const std::vector<std::int8_t> ten(10, 1);
  CHECK_THROWS_AS(SpinConfig::from_signs(ten), GeometryError);

  const SpinConfig board = SpinConfig::checkerboard(4);
  long sum = 0;
  for (auto s : board.spins) sum += s;
  CHECK(sum == 0);
}
