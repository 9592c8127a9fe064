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

// Compares the OpenMP kernels against their serial counterparts: wall time
// per call and the maximum output difference, which must be exactly zero.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spim/fft.hpp"
#include "spim/noise.hpp"
#include "spim/optics.hpp"
#include "spim/oracles.hpp"
#include "spim/rng.hpp"

using namespace spim;
using Clock = std::chrono::steady_clock;

namespace {

// Best-of-reps after one warmup call; robust against scheduler noise.
double time_ms(const std::function<void()>& fn, int reps) {
  fn();
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto start = Clock::now();
    fn();
    best = std::min(
        best, std::chrono::duration<double, std::milli>(Clock::now() - start).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms, double max_diff) {
  std::printf("%-28s %10.3f ms %10.3f ms %8.2fx %12.3e\n", name, serial_ms, parallel_ms,
              parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0, max_diff);
}

void bench_fft(int side, int reps) {
  std::mt19937_64 gen(1);
  std::vector<fft::cplx> base(static_cast<std::size_t>(side) * side);
  for (auto& v : base) v = fft::cplx(rng::uniform01(gen), rng::uniform01(gen));

  auto serial_out = base;
  fft::forward_2d(serial_out, side, side, false);
  auto parallel_out = base;
  fft::forward_2d(parallel_out, side, side, true);
  double max_diff = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    max_diff = std::max(max_diff, std::abs(serial_out[i] - parallel_out[i]));
  }

  const double serial_ms = time_ms(
      [&] {
        auto work = base;
        fft::forward_2d(work, side, side, false);
      },
      reps);
  const double parallel_ms = time_ms(
      [&] {
        auto work = base;
        fft::forward_2d(work, side, side, true);
      },
      reps);
  char name[64];
  std::snprintf(name, sizeof(name), "fft2d %dx%d", side, side);
  report(name, serial_ms, parallel_ms, max_diff);
}

void bench_cost(int side, int reps) {
  std::mt19937_64 gen(2);
  optics::IntensityImage img;
  img.width = side;
  img.height = side;
  img.values.resize(static_cast<std::size_t>(side) * side);
  for (auto& v : img.values) v = rng::uniform01(gen);
  optics::TargetIntensity target;
  target.kind = optics::TargetIntensity::Kind::captured_pattern;
  target.width = side;
  target.height = side;
  target.values.resize(img.values.size());
  for (auto& v : target.values) v = rng::uniform01(gen);

  const double serial = optics::cost(img, target, false);
  const double parallel = optics::cost(img, target, true);

  const double serial_ms = time_ms([&] { (void)optics::cost(img, target, false); }, reps);
  const double parallel_ms = time_ms([&] { (void)optics::cost(img, target, true); }, reps);
  char name[64];
  std::snprintf(name, sizeof(name), "cost %dx%d", side, side);
  report(name, serial_ms, parallel_ms, std::fabs(serial - parallel));
}

void bench_measure(int reps) {
  const optics::SlmGeometry geom = optics::SlmGeometry::for_spins(16);
  std::mt19937_64 gen(3);
  SpinConfig cfg;
  cfg.side = 16;
  cfg.spins.resize(256);
  for (auto& s : cfg.spins) s = (gen() & 1u) ? std::int8_t{1} : std::int8_t{-1};
  const NppInstance inst = bench::gen_instance(256, 8, 9);
  const optics::SlmFrame frame = optics::compose_phase(cfg, inst.alpha, geom);

  noise::CameraModel cam;
  cam.seed = 5;
  cam.read_noise_sigma = 1.0;
  const noise::DeviceNoise dn = noise::DeviceNoise::lab_preset();

  const auto run = [&](bool parallel) {
    noise::OpticalBench bench_path(cam, dn, 1, nullptr);
    bench_path.calibrate(frame);
    return optics::center_window_sum(bench_path.measure(frame, parallel), 64);
  };
  const double serial = run(false);
  const double parallel = run(true);
  const double serial_ms = time_ms([&] { (void)run(false); }, reps);
  const double parallel_ms = time_ms([&] { (void)run(true); }, reps);
  report("camera measure 256x256", serial_ms, parallel_ms, std::fabs(serial - parallel));
}

void bench_exhaustive(int n) {
  const NppInstance inst = bench::gen_instance(n, 8, 11);
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
  omp_set_num_threads(1);
#endif
  const auto t0 = Clock::now();
  const auto serial = bench::exhaustive_best(inst);
  const double serial_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
#ifdef _OPENMP
  omp_set_num_threads(max_threads);
#endif
  const auto t1 = Clock::now();
  const auto parallel = bench::exhaustive_best(inst);
  const double parallel_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - t1).count();
  char name[64];
  std::snprintf(name, sizeof(name), "exhaustive n=%d", n);
  report(name, serial_ms, parallel_ms, std::fabs(serial.fidelity - parallel.fidelity));
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 5;
  bool large = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--reps" && i + 1 < argc) reps = std::atoi(argv[++i]);
    if (arg == "--large") large = true;
  }

#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP not enabled; both columns are serial\n");
#endif
  std::printf("%-28s %13s %13s %9s %12s\n", "kernel", "serial", "parallel", "speedup",
              "max |diff|");

  bench_fft(256, reps);
  bench_fft(512, reps);
  if (large) bench_fft(1024, reps);
  bench_cost(512, reps);
  bench_measure(reps);
  bench_exhaustive(20);
  return 0;
}
