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

#ifndef SPIM_BENCH_HPP
#define SPIM_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spim/oracles.hpp"
#include "spim/solvers.hpp"

namespace spim::bench {

struct BenchRecord {
  std::string instance_id;
  int n_spins = 0;
  std::string solver_name;
  double best_fidelity = 0.0;
  double best_residual = 0.0;  // raw-number units: fidelity * sum of numbers
  long iterations = 0;
  double simulated_time_ms = 0.0;
  double wall_time_ms = 0.0;
  std::uint64_t seed = 0;
  bool failed = false;
  std::string error;
};

struct SuiteConfig {
  std::vector<int> sizes{16, 64, 256};
  int seeds_per_size = 2;
  std::uint64_t base_seed = 1;
  int digits = 8;
  std::vector<std::string> solvers{"spim", "kk", "random"};
  long random_samples = 1000000;

  solve::RunMode mode = solve::RunMode::fast;
  AdiabaticSchedule adiabatic{64, 0, 0};  // settle 0 = auto max(32, n/64)
  solve::AnnealSchedule anneal;           // total 0 = K * settle
  int mh_d = 0;
  int roi = 64;
  int oversample = 1;
  noise::CameraModel camera;
  noise::DeviceNoise device_noise = noise::DeviceNoise::none();
};

// Runs every (instance, solver) cell; failures become failed records, never
// exceptions. Cells run under OpenMP with per-cell seeds; record order and
// values are independent of the thread count.
std::vector<BenchRecord> run_benchmark(const SuiteConfig& config);

// One SPIM cell, exposed for the scaling study and the CLI solve command.
BenchRecord run_spim_cell(const NppInstance& inst, const std::string& instance_id,
                          const SuiteConfig& config, std::uint64_t cell_seed);

struct ScalingRow {
  int size = 0;
  int seeds = 0;
  double mean_fidelity = 0.0;
  double std_fidelity = 0.0;
  double mean_sim_time_ms = 0.0;
  double mean_wall_time_ms = 0.0;
  long iterations = 0;
  double wall_ms_per_iteration = 0.0;
};

// Mean solution quality and runtime per lattice size; sizes must be perfect
// squares >= 16.
std::vector<ScalingRow> fidelity_scaling(const std::vector<int>& sizes, int seeds_per_size,
                                         const SuiteConfig& base);

// Deterministic CSV emissions (wall-clock timings go to the separate
// timings CSV, which is excluded from reproducibility guarantees).
std::string records_csv(const std::vector<BenchRecord>& records);
std::string timings_csv(const std::vector<BenchRecord>& records);
std::string scaling_csv(const std::vector<ScalingRow>& rows);
std::string scaling_timings_csv(const std::vector<ScalingRow>& rows);

// Published hardware/solver reference numbers shipped for context. These are
// literature values, tagged as such; the simulator never produces them.
std::string reference_table_json();

// Worker cap for benchmark cells: SPIM_SIM_THREADS when set, else the
// OpenMP default.
int bench_thread_cap();

// Derived instance/cell seeds (stable across runs and thread counts).
std::uint64_t instance_seed(std::uint64_t base_seed, int size, int seed_index);
std::uint64_t cell_seed(std::uint64_t base_seed, int size, int seed_index,
                        int solver_index);

}  // namespace spim::bench

#endif  // SPIM_BENCH_HPP
