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

#include "spim/noise.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spim/error.hpp"
#include "spim/rng.hpp"

namespace spim::noise {

namespace {

// Noise stream ids; each (frame, pixel, stream) triple is an independent draw.
enum Stream : std::uint64_t { kRin = 1, kRead = 2, kShot = 3, kFlicker = 4 };

inline bool use_parallel(bool requested) {
#ifdef _OPENMP
  return requested && !omp_in_parallel();
#else
  (void)requested;
  return false;
#endif
}

}  // namespace

DeviceNoise DeviceNoise::none() {
  DeviceNoise n;
  n.laser_rin_sigma = 0.0;
  n.phase_flicker_sigma = 0.0;
  return n;
}

DeviceNoise DeviceNoise::lab_preset() {
  // Tunables giving a small but clearly nonzero floor at 8-bit depth.
  DeviceNoise n;
  n.laser_rin_sigma = 0.005;
  n.phase_flicker_sigma = 0.02;
  return n;
}

void SimClock::advance(double ms) {
  sim_ms += ms;
  if (realtime && ms > 0.0) {
    std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(ms));
  }
}

void settle_delay(const DeviceNoise& noise, SimClock& clock) {
  clock.advance(noise.settle_ms);
}

CameraModel calibrate_exposure(CameraModel cam, const optics::IntensityImage& reference) {
  const double peak = reference.max_value();
  if (!(peak > 0.0)) {
    throw CalibrationError("reference image has no positive intensity");
  }
  cam.exposure_gain = static_cast<double>(cam.max_count()) / peak;
  return cam;
}

optics::IntensityImage capture(const CameraModel& cam, const DeviceNoise& noise,
                               const optics::IntensityImage& image,
                               std::uint64_t frame_index, bool parallel) {
  optics::IntensityImage out;
  out.width = image.width;
  out.height = image.height;
  out.oversample = image.oversample;
  out.values.resize(image.values.size());

  double rin_factor = 1.0;
  if (noise.laser_rin_sigma > 0.0) {
    rin_factor = 1.0 + noise.laser_rin_sigma *
                           rng::counter_gaussian(cam.seed, frame_index, 0, kRin);
  }
  const double max_count = cam.max_count();
  const bool read = cam.read_noise_sigma > 0.0;
  const bool shot = cam.shot_noise;

  const bool par = use_parallel(parallel);
#pragma omp parallel for schedule(static) if (par)
  for (long i = 0; i < static_cast<long>(image.values.size()); ++i) {
    double v = cam.exposure_gain * image.values[i] * rin_factor;
    if (shot) {
      // High-photon limit: Gaussian with variance equal to the count level.
      v += std::sqrt(std::max(v, 0.0)) *
           rng::counter_gaussian(cam.seed, frame_index, static_cast<std::uint64_t>(i), kShot);
    }
    if (read) {
      v += cam.read_noise_sigma *
           rng::counter_gaussian(cam.seed, frame_index, static_cast<std::uint64_t>(i), kRead);
    }
    out.values[i] = std::clamp(std::round(v), 0.0, max_count);
  }
  return out;
}

OpticalBench::OpticalBench(CameraModel cam, DeviceNoise noise, int oversample, SimClock* clock)
    : cam_(cam), noise_(noise), oversample_(oversample), clock_(clock) {
  if (oversample < 1) throw InvalidArgument("oversample must be >= 1");
}

void OpticalBench::calibrate(const optics::SlmFrame& frame) {
  const optics::FieldImage field = optics::forward_field(frame, oversample_);
  cam_ = calibrate_exposure(cam_, optics::intensity_of(field));
}

optics::IntensityImage OpticalBench::measure(const optics::SlmFrame& frame, bool parallel) {
  const std::uint64_t frame_index = frame_counter_++;
  if (clock_ != nullptr) {
    // One device iteration: frame refresh plus modulator settling.
    settle_delay(noise_, *clock_);
    clock_->advance(kRefreshOverheadMs);
  }

  std::vector<double> flicker;
  if (noise_.phase_flicker_sigma > 0.0) {
    flicker.resize(frame.phase.size());
    const bool par = use_parallel(parallel);
#pragma omp parallel for schedule(static) if (par)
    for (long i = 0; i < static_cast<long>(flicker.size()); ++i) {
      flicker[i] = noise_.phase_flicker_sigma *
                   rng::counter_gaussian(cam_.seed, frame_index,
                                         static_cast<std::uint64_t>(i), kFlicker);
    }
  }
  const optics::FieldImage field = optics::forward_field(frame, oversample_, {}, parallel,
                                                         flicker);
  return capture(cam_, noise_, optics::intensity_of(field, parallel), frame_index, parallel);
}

double noise_floor(const CameraModel& cam, const DeviceNoise& noise, int frames,
                   const optics::SlmGeometry& geom, int oversample, SimClock* clock) {
  if (frames < 2) throw InvalidArgument("noise_floor needs at least 2 frames");

  const SpinConfig board = SpinConfig::checkerboard(geom.spin_side);
  const std::vector<double> alphas(board.spins.size(), 0.0);
  const optics::SlmFrame frame = optics::compose_phase(board, alphas, geom);

  OpticalBench bench(cam, noise, oversample, clock);
  bench.calibrate(frame);
  const optics::TargetIntensity target =
      optics::TargetIntensity::from_image(bench.measure(frame));

  double total = 0.0;
  for (int i = 0; i < frames; ++i) {
    total += optics::cost(bench.measure(frame), target);
  }
  return total / frames;
}

}  // namespace spim::noise
