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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "spim/bench.hpp"
#include "spim/error.hpp"
#include "spim/io.hpp"
#include "spim/noise.hpp"
#include "spim/oracles.hpp"
#include "spim/solvers.hpp"

namespace fs = std::filesystem;
using namespace spim;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;

struct CommonOpts {
  std::string out_dir = "spim-out";
  std::string mode = "fast";
  std::uint64_t seed = 1;
  int roi = 64;
  int spins = 16;            // lattice side S
  int pixels_per_spin = 0;   // 0 = hardware default for the lattice side
  std::string noise_preset = "none";
  double read_noise = 0.0;
  bool svg = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->fallthrough();  // lets subcommands reach the top-level --config flag
  cmd->add_option("--out", opts.out_dir, "Output directory");
  cmd->add_option("--mode", opts.mode, "fast|camera|realtime")
      ->check(CLI::IsMember({"fast", "camera", "realtime"}));
  cmd->add_option("--seed", opts.seed, "Run seed");
  cmd->add_option("--roi", opts.roi, "Centered readout window (pixels)");
  cmd->add_option("--spins", opts.spins, "Spin lattice side S");
  cmd->add_option("--pixels-per-spin", opts.pixels_per_spin,
                  "Pixels per spin M (multiple of 4; 0 = default)");
  cmd->add_option("--noise", opts.noise_preset, "none|lab")
      ->check(CLI::IsMember({"none", "lab"}));
  cmd->add_option("--read-noise", opts.read_noise, "Camera read noise sigma (counts)");
  cmd->add_flag("--svg", opts.svg, "Also render SVG charts");
}

noise::DeviceNoise device_noise_for(const CommonOpts& opts) {
  return opts.noise_preset == "lab" ? noise::DeviceNoise::lab_preset()
                                    : noise::DeviceNoise::none();
}

noise::CameraModel camera_for(const CommonOpts& opts) {
  noise::CameraModel cam;
  cam.seed = opts.seed;
  cam.read_noise_sigma = opts.read_noise;
  if (opts.noise_preset == "lab" && opts.read_noise == 0.0) cam.read_noise_sigma = 1.0;
  return cam;
}

optics::SlmGeometry geometry_for(const CommonOpts& opts, int side) {
  optics::SlmGeometry geom = optics::SlmGeometry::for_spins(side);
  if (opts.pixels_per_spin > 0) geom.pixels_per_spin = opts.pixels_per_spin;
  geom.validate();
  return geom;
}

std::string fmt(double v) { return io::fmt_sci(v); }

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory '" + dir + "'");
}

// ---------------------------------------------------------------------------

struct SolveOpts {
  CommonOpts common;
  std::string instance_path;
  int n = 64;
  int digits = 8;
  int steps = 64;        // adiabatic stages K
  int settle = 0;        // 0 = max(32, n/64)
  long iterations = 0;   // 0 = (K+1)*settle
  int d = 0;
  double beta_start = 0.0;
  double beta_end = 0.0;
};

int cmd_solve(const SolveOpts& opts) {
  NppInstance inst;
  if (!opts.instance_path.empty()) {
    inst = normalize_instance(io::read_numbers(opts.instance_path));
  } else {
    inst = bench::gen_instance(opts.n, opts.digits, opts.common.seed);
  }
  const int n = inst.size();

  AdiabaticSchedule sched;
  sched.total_steps = opts.steps;
  sched.settle_iterations = opts.settle > 0 ? opts.settle : std::max(32, n / 64);
  solve::AnnealSchedule anneal_sched;
  anneal_sched.beta_start = opts.beta_start;
  anneal_sched.beta_end = opts.beta_end;
  anneal_sched.total_iterations = static_cast<int>(opts.iterations);

  solve::MhParams params;
  params.d = opts.d;
  params.seed = opts.common.seed;

  noise::SimClock clock;
  clock.realtime = opts.common.mode == "realtime";
  solve::SolveOptions options;
  options.mode = solve::run_mode_from_string(opts.common.mode);
  options.clock = &clock;
  if (options.mode != solve::RunMode::fast) {
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (side * side != n) {
      throw GeometryError("camera mode needs a square spin count, got " + std::to_string(n));
    }
    options.geom = geometry_for(opts.common, side);
    options.camera.camera = camera_for(opts.common);
    options.camera.device_noise = device_noise_for(opts.common);
    options.camera.roi = opts.common.roi;
  }

  const solve::RunTrace trace = solve::adiabatic_solve(inst, sched, anneal_sched, params, options);

  ensure_out_dir(opts.common.out_dir);
  const std::string trace_path = opts.common.out_dir + "/trace.csv";
  io::write_text(trace_path, io::trace_csv(trace));
  std::vector<std::string> outputs{"trace.csv", "partition.json"};
  if (opts.instance_path.empty()) {
    io::write_instance_json(opts.common.out_dir + "/instance.json", inst.numbers);
    outputs.push_back("instance.json");
  }

  // Decode the best configuration into the two subsets.
  nlohmann::json partition;
  std::vector<double> subset_a;
  std::vector<double> subset_b;
  for (int j = 0; j < n; ++j) {
    (trace.best_spins[j] > 0 ? subset_a : subset_b).push_back(inst.numbers[j]);
  }
  const auto [sum_a, sum_b] = partition_sums(inst, trace.best_spins);
  partition["subset_a"] = subset_a;
  partition["subset_b"] = subset_b;
  partition["sum_a"] = sum_a;
  partition["sum_b"] = sum_b;
  partition["residual"] = std::fabs(sum_a - sum_b);
  partition["fidelity"] = trace.best_fidelity;
  const std::string partition_path = opts.common.out_dir + "/partition.json";
  io::write_text(partition_path, partition.dump(2) + "\n");

  if (opts.common.svg) {
    io::Series cost_series{"objective", {}, {}};
    io::Series fid_series{"fidelity", {}, {}};
    for (const auto& row : trace.rows) {
      cost_series.x.push_back(static_cast<double>(row.iteration));
      cost_series.y.push_back(row.objective);
      fid_series.x.push_back(static_cast<double>(row.iteration));
      fid_series.y.push_back(row.fidelity);
    }
    io::write_text(opts.common.out_dir + "/trace.svg",
                   io::line_chart_svg({cost_series, fid_series}, "solve trace", "iteration",
                                      "value", true));
    outputs.push_back("trace.svg");
  }

  io::write_manifest(
      opts.common.out_dir, "solve",
      {{"instance", opts.instance_path.empty() ? "generated" : opts.instance_path},
       {"n", std::to_string(n)},
       {"digits", std::to_string(opts.digits)},
       {"mode", opts.common.mode},
       {"steps", std::to_string(sched.total_steps)},
       {"settle", std::to_string(sched.settle_iterations)},
       {"iterations", std::to_string(trace.rows.size() - 1)},
       {"d", std::to_string(params.flip_count(n))},
       {"roi", std::to_string(opts.common.roi)},
       {"noise", opts.common.noise_preset}},
      {opts.common.seed}, outputs);

  const double residual = trace.best_fidelity * inst.sum_numbers();
  std::cout << "solve: fidelity=" << fmt(trace.best_fidelity) << " residual=" << fmt(residual)
            << " iterations=" << trace.rows.size() - 1
            << " simulated_time_s=" << fmt(trace.sim_time_ms / 1000.0) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct CheckerboardOpts {
  CommonOpts common;
  std::string algorithm = "mh";
  long iterations = 1500;
  int d = 1;
  int population = 16;
  double mutation_rate = 0.05;
};

int cmd_checkerboard(const CheckerboardOpts& opts) {
  const optics::SlmGeometry geom = geometry_for(opts.common, opts.common.spins);
  noise::SimClock clock;
  clock.realtime = opts.common.mode == "realtime";
  solve::CameraRunArgs args;
  args.camera = camera_for(opts.common);
  args.device_noise = device_noise_for(opts.common);
  args.roi = opts.common.roi;
  args.clock = &clock;

  solve::CheckerboardResult result;
  if (opts.algorithm == "mh") {
    solve::AnnealSchedule sched;
    sched.total_iterations = static_cast<int>(opts.iterations);
    solve::MhParams params;
    params.seed = opts.common.seed;
    params.d = opts.d;
    params.objective = solve::ObjectiveKind::full_image_cost;
    result = solve::checkerboard_mh(geom, sched, params, args);
  } else {
    solve::GaParams params;
    params.seed = opts.common.seed;
    params.population = opts.population;
    params.mutation_rate = opts.mutation_rate;
    result = solve::checkerboard_ga(geom, params, opts.iterations, args);
  }

  ensure_out_dir(opts.common.out_dir);
  io::write_text(opts.common.out_dir + "/trace.csv", io::trace_csv(result.trace));
  std::vector<std::string> outputs{"trace.csv"};
  if (opts.common.svg) {
    io::Series series{"cost", {}, {}};
    for (const auto& row : result.trace.rows) {
      series.x.push_back(static_cast<double>(row.iteration));
      series.y.push_back(row.objective);
    }
    io::write_text(opts.common.out_dir + "/trace.svg",
                   io::line_chart_svg({series}, "checkerboard " + opts.algorithm, "iteration",
                                      "cost", false));
    outputs.push_back("trace.svg");
  }
  io::write_manifest(opts.common.out_dir, "checkerboard",
                     {{"algorithm", opts.algorithm},
                      {"spins", std::to_string(opts.common.spins)},
                      {"pixels_per_spin", std::to_string(geom.pixels_per_spin)},
                      {"iterations", std::to_string(opts.iterations)},
                      {"noise", opts.common.noise_preset},
                      {"mode", opts.common.mode}},
                     {opts.common.seed}, outputs);

  std::cout << "checkerboard " << opts.algorithm << ": initial=" << fmt(result.initial_cost)
            << " final=" << fmt(result.final_cost) << " ratio=" << fmt(result.ratio)
            << " evaluations=" << result.trace.evaluations << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct NoiseFloorOpts {
  CommonOpts common;
  int frames = 32;
};

int cmd_noise_floor(const NoiseFloorOpts& opts) {
  const optics::SlmGeometry geom = geometry_for(opts.common, opts.common.spins);
  const double floor =
      noise::noise_floor(camera_for(opts.common), device_noise_for(opts.common), opts.frames,
                         geom);
  ensure_out_dir(opts.common.out_dir);
  io::write_text(opts.common.out_dir + "/noise_floor.txt", fmt(floor) + "\n");
  io::write_manifest(opts.common.out_dir, "noise-floor",
                     {{"frames", std::to_string(opts.frames)},
                      {"spins", std::to_string(opts.common.spins)},
                      {"noise", opts.common.noise_preset},
                      {"read_noise", fmt(camera_for(opts.common).read_noise_sigma)}},
                     {opts.common.seed}, {"noise_floor.txt"});
  std::cout << "noise_floor=" << fmt(floor) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------

struct BenchOpts {
  CommonOpts common;
  std::vector<int> sizes{16, 64, 256};
  int seeds = 2;
  std::vector<std::string> solvers{"spim", "kk", "random"};
  int digits = 8;
  long random_samples = 1000000;
  int steps = 64;
  int settle = 0;
};

bench::SuiteConfig suite_from(const BenchOpts& opts) {
  bench::SuiteConfig config;
  config.sizes = opts.sizes;
  config.seeds_per_size = opts.seeds;
  config.solvers = opts.solvers;
  config.digits = opts.digits;
  config.base_seed = opts.common.seed;
  config.random_samples = opts.random_samples;
  config.mode = solve::run_mode_from_string(opts.common.mode);
  config.adiabatic.total_steps = opts.steps;
  config.adiabatic.settle_iterations = opts.settle;
  config.roi = opts.common.roi;
  config.camera = camera_for(opts.common);
  config.device_noise = device_noise_for(opts.common);
  return config;
}

int cmd_bench(const BenchOpts& opts) {
  const bench::SuiteConfig config = suite_from(opts);
  const std::vector<bench::BenchRecord> records = bench::run_benchmark(config);

  ensure_out_dir(opts.common.out_dir);
  io::write_text(opts.common.out_dir + "/records.csv", bench::records_csv(records));
  io::write_text(opts.common.out_dir + "/timings.csv", bench::timings_csv(records));
  io::write_text(opts.common.out_dir + "/reference_table.json", bench::reference_table_json());

  std::string sizes_str;
  for (int s : config.sizes) sizes_str += (sizes_str.empty() ? "" : ",") + std::to_string(s);
  std::string solvers_str;
  for (const auto& s : config.solvers) solvers_str += (solvers_str.empty() ? "" : ",") + s;
  io::write_manifest(opts.common.out_dir, "bench",
                     {{"sizes", sizes_str},
                      {"seeds_per_size", std::to_string(config.seeds_per_size)},
                      {"solvers", solvers_str},
                      {"digits", std::to_string(config.digits)},
                      {"random_samples", std::to_string(config.random_samples)},
                      {"mode", opts.common.mode}},
                     {config.base_seed}, {"records.csv", "timings.csv", "reference_table.json"});

  long failed = 0;
  for (const auto& r : records) failed += r.failed ? 1 : 0;
  std::cout << "bench: records=" << records.size() << " failed=" << failed << " out="
            << opts.common.out_dir << "\n";
  return failed == 0 ? 0 : kExitInternal;
}

// ---------------------------------------------------------------------------

struct ScalingOpts {
  CommonOpts common;
  std::vector<int> sizes{16, 64, 256, 1024};
  int seeds = 5;
  int steps = 64;
  int settle = 0;
};

int cmd_scaling(const ScalingOpts& opts) {
  bench::SuiteConfig config;
  config.base_seed = opts.common.seed;
  config.mode = solve::run_mode_from_string(opts.common.mode);
  config.adiabatic.total_steps = opts.steps;
  config.adiabatic.settle_iterations = opts.settle;
  config.roi = opts.common.roi;
  config.camera = camera_for(opts.common);
  config.device_noise = device_noise_for(opts.common);

  const std::vector<bench::ScalingRow> rows =
      bench::fidelity_scaling(opts.sizes, opts.seeds, config);

  ensure_out_dir(opts.common.out_dir);
  io::write_text(opts.common.out_dir + "/scaling.csv", bench::scaling_csv(rows));
  io::write_text(opts.common.out_dir + "/scaling_timings.csv",
                 bench::scaling_timings_csv(rows));
  std::vector<std::string> outputs{"scaling.csv", "scaling_timings.csv"};
  if (opts.common.svg) {
    io::Series series{"mean fidelity", {}, {}};
    for (const auto& row : rows) {
      series.x.push_back(static_cast<double>(row.size));
      series.y.push_back(std::max(row.mean_fidelity, 1e-12));
    }
    io::write_text(opts.common.out_dir + "/scaling.svg",
                   io::line_chart_svg({series}, "solution quality vs size", "spins",
                                      "mean fidelity", true));
    outputs.push_back("scaling.svg");
  }

  std::string sizes_str;
  for (int s : opts.sizes) sizes_str += (sizes_str.empty() ? "" : ",") + std::to_string(s);
  io::write_manifest(opts.common.out_dir, "scaling",
                     {{"sizes", sizes_str},
                      {"seeds_per_size", std::to_string(opts.seeds)},
                      {"mode", opts.common.mode}},
                     {config.base_seed}, outputs);

  std::cout << "scaling: rows=" << rows.size() << " out=" << opts.common.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spim-sim: spatial-photonic Ising machine simulator for number partitioning"};
  app.set_version_flag("--version", io::kToolVersion);
  app.set_config("--config", "", "TOML-style config file; command-line flags win");
  app.require_subcommand(1);

  SolveOpts solve_opts;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Adiabatic solve of one instance");
  add_common(solve_cmd, solve_opts.common);
  solve_cmd->add_option("--instance", solve_opts.instance_path,
                        "Instance file (JSON array or one number per line)");
  solve_cmd->add_option("--n", solve_opts.n, "Generated instance size");
  solve_cmd->add_option("--digits", solve_opts.digits, "Significant digits for generation");
  solve_cmd->add_option("--steps", solve_opts.steps, "Adiabatic stages K");
  solve_cmd->add_option("--settle", solve_opts.settle, "Iterations per stage (0 = auto)");
  solve_cmd->add_option("--iterations", solve_opts.iterations,
                        "Total iteration budget (0 = (K+1)*settle)");
  solve_cmd->add_option("--d", solve_opts.d, "Spins flipped per proposal (0 = auto)");
  solve_cmd->add_option("--beta-start", solve_opts.beta_start, "Initial beta (0 = calibrate)");
  solve_cmd->add_option("--beta-end", solve_opts.beta_end, "Final beta (0 = calibrate)");

  CheckerboardOpts checker_opts;
  CLI::App* checker_cmd =
      app.add_subcommand("checkerboard", "Checkerboard-target convergence demo");
  add_common(checker_cmd, checker_opts.common);
  checker_cmd->add_option("--algo", checker_opts.algorithm, "mh|ga")
      ->check(CLI::IsMember({"mh", "ga"}));
  checker_cmd->add_option("--iterations", checker_opts.iterations,
                          "Iteration / evaluation budget");
  checker_cmd->add_option("--d", checker_opts.d, "Spins flipped per proposal");
  checker_cmd->add_option("--population", checker_opts.population, "GA population");
  checker_cmd->add_option("--mutation-rate", checker_opts.mutation_rate, "GA mutation rate");

  NoiseFloorOpts floor_opts;
  CLI::App* floor_cmd = app.add_subcommand("noise-floor", "Measure the machine noise floor");
  add_common(floor_cmd, floor_opts.common);
  floor_cmd->add_option("--frames", floor_opts.frames, "Captures to average");

  BenchOpts bench_opts;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run the benchmark suite");
  add_common(bench_cmd, bench_opts.common);
  bench_cmd->add_option("--sizes", bench_opts.sizes, "Problem sizes")->delimiter(',');
  bench_cmd->add_option("--seeds", bench_opts.seeds, "Seeds per size");
  bench_cmd->add_option("--solvers", bench_opts.solvers, "spim,kk,exhaustive,random")
      ->delimiter(',');
  bench_cmd->add_option("--digits", bench_opts.digits, "Significant digits");
  bench_cmd->add_option("--random-samples", bench_opts.random_samples,
                        "Samples for the random baseline");
  bench_cmd->add_option("--steps", bench_opts.steps, "Adiabatic stages K");
  bench_cmd->add_option("--settle", bench_opts.settle, "Iterations per stage (0 = auto)");

  ScalingOpts scaling_opts;
  CLI::App* scaling_cmd = app.add_subcommand("scaling", "Solution quality vs problem size");
  add_common(scaling_cmd, scaling_opts.common);
  scaling_cmd->add_option("--sizes", scaling_opts.sizes, "Lattice sizes (perfect squares)")
      ->delimiter(',');
  scaling_cmd->add_option("--seeds", scaling_opts.seeds, "Seeds per size");
  scaling_cmd->add_option("--steps", scaling_opts.steps, "Adiabatic stages K");
  scaling_cmd->add_option("--settle", scaling_opts.settle, "Iterations per stage (0 = auto)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (solve_cmd->parsed()) return cmd_solve(solve_opts);
    if (checker_cmd->parsed()) return cmd_checkerboard(checker_opts);
    if (floor_cmd->parsed()) return cmd_noise_floor(floor_opts);
    if (bench_cmd->parsed()) return cmd_bench(bench_opts);
    if (scaling_cmd->parsed()) return cmd_scaling(scaling_opts);
  } catch (const InvalidInstance& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ScheduleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const NotSupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitBadInput;
}
