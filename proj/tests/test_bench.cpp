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
#include <cstdlib>

#include <json.hpp>

#include "spim/bench.hpp"
#include "spim/error.hpp"

using namespace spim;
using bench::SuiteConfig;

namespace {

SuiteConfig small_suite() {
  SuiteConfig config;
  config.sizes = {9, 16};
  config.seeds_per_size = 2;
  config.digits = 8;
  config.solvers = {"kk", "random"};
  config.random_samples = 5000;
  config.base_seed = 12;
  return config;
}

}  // namespace

TEST_CASE("benchmark cell counting: sizes x seeds x solvers") {
  const SuiteConfig config = small_suite();
  const auto records = bench::run_benchmark(config);
  CHECK(records.size() == 2u * 2u * 2u);
  int kk_count = 0;
  for (const auto& r : records) {
    CHECK_FALSE(r.failed);
    if (r.solver_name == "kk") ++kk_count;
  }
  CHECK(kk_count == 4);
}

TEST_CASE("records keep fidelity and residual consistent") {
  const SuiteConfig config = small_suite();
  const auto records = bench::run_benchmark(config);
  for (const auto& r : records) {
    // Rebuild the instance the same way the harness does.
    int seed_index = r.instance_id.back() - '0';
    const NppInstance inst = bench::gen_instance(
        r.n_spins, config.digits, bench::instance_seed(config.base_seed, r.n_spins, seed_index));
    CHECK(r.best_residual ==
          doctest::Approx(r.best_fidelity * inst.sum_numbers()).epsilon(1e-9));
    CHECK(r.best_fidelity >= 0.0);
    CHECK(r.best_fidelity <= 1.0);
  }
}

TEST_CASE("spim cells run in fast mode and dominate the exact optimum") {
  SuiteConfig config;
  config.sizes = {16};
  config.seeds_per_size = 2;
  config.solvers = {"spim", "exhaustive"};
  config.base_seed = 5;
  config.adiabatic.total_steps = 16;
  config.adiabatic.settle_iterations = 16;
  const auto records = bench::run_benchmark(config);
  REQUIRE(records.size() == 4);
  for (int k = 0; k < 2; ++k) {
    const auto& spim_rec = records[2 * k];
    const auto& exact_rec = records[2 * k + 1];
    CHECK(spim_rec.solver_name == "spim");
    CHECK(exact_rec.solver_name == "exhaustive");
    CHECK_FALSE(spim_rec.failed);
    CHECK(spim_rec.best_fidelity >= exact_rec.best_fidelity - 1e-12);
    CHECK(spim_rec.simulated_time_ms > 0.0);
  }
}

TEST_CASE("failures are recorded, not fatal") {
  SuiteConfig config;
  config.sizes = {36};  // too large for exhaustive enumeration
  config.seeds_per_size = 1;
  config.solvers = {"exhaustive", "kk"};
  const auto records = bench::run_benchmark(config);
  REQUIRE(records.size() == 2);
  CHECK(records[0].failed);
  CHECK(records[0].error.find("exhaustive") != std::string::npos);
  CHECK_FALSE(records[1].failed);
}

TEST_CASE("records CSV is byte-identical across re-runs and thread counts") {
  const SuiteConfig config = small_suite();
  const std::string first = bench::records_csv(bench::run_benchmark(config));

  setenv("SPIM_SIM_THREADS", "1", 1);
  const std::string serial = bench::records_csv(bench::run_benchmark(config));
  setenv("SPIM_SIM_THREADS", "2", 1);
  const std::string threaded = bench::records_csv(bench::run_benchmark(config));
  unsetenv("SPIM_SIM_THREADS");

  CHECK(first == serial);
  CHECK(first == threaded);
  CHECK(first.rfind("# spim-bench-records v1\n", 0) == 0);
}

TEST_CASE("scaling validates sizes and aggregates one row per size") {
  SuiteConfig config;
  config.adiabatic.total_steps = 8;
  config.adiabatic.settle_iterations = 8;
  const auto rows = bench::fidelity_scaling({16, 25}, 3, config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].size == 16);
  CHECK(rows[1].size == 25);
  CHECK(rows[0].seeds == 3);
  CHECK(rows[0].mean_fidelity >= 0.0);
  CHECK(rows[0].iterations == (8 + 1) * 8);

  CHECK_THROWS_AS(bench::fidelity_scaling({15}, 1, config), GeometryError);
  CHECK_THROWS_AS(bench::fidelity_scaling({4}, 1, config), GeometryError);
}

TEST_CASE("reference table ships tagged literature values") {
  const auto j = nlohmann::json::parse(bench::reference_table_json());
  CHECK(j["origin"] == "literature");
  CHECK(j["best_fidelity_64_spins_per_instance"].size() == 5);
  CHECK(j["summary"].size() == 3);
  CHECK(j["summary"][0]["max_problem_size"] == 16384);
  // Spot values pinned from the published comparison.
  CHECK(j["best_fidelity_64_spins_per_instance"][0]["gurobi"].get<double>() ==
        doctest::Approx(4.38e-05));
  CHECK(j["summary"][0]["avg_fidelity_64_spins"].get<double>() == doctest::Approx(6e-04));
}

TEST_CASE("csv emitters carry schema headers") {
  const SuiteConfig config = small_suite();
  const auto records = bench::run_benchmark(config);
  CHECK(bench::timings_csv(records).rfind("# spim-bench-timings v1", 0) == 0);
  SuiteConfig scaling_config;
  scaling_config.adiabatic.total_steps = 4;
  scaling_config.adiabatic.settle_iterations = 4;
  const auto rows = bench::fidelity_scaling({16}, 1, scaling_config);
  CHECK(bench::scaling_csv(rows).rfind("# spim-scaling v1\n", 0) == 0);
  CHECK(bench::scaling_timings_csv(rows).rfind("# spim-scaling-timings v1", 0) == 0);
}
