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

#ifndef SPIM_NOISE_HPP
#define SPIM_NOISE_HPP

#include <cstdint>

#include "spim/optics.hpp"

namespace spim::noise {

// Simulated-device latency constants. One full iteration (frame refresh,
// modulator settling, readout) takes kIterationCycleMs on the hardware this
// models; the settling part alone takes DeviceNoise::settle_ms.
constexpr double kRefreshOverheadMs = 120.0;
constexpr double kDefaultSettleMs = 150.0;
constexpr double kIterationCycleMs = kDefaultSettleMs + kRefreshOverheadMs;  // 270

struct CameraModel {
  int bit_depth = 8;
  double exposure_gain = 1.0;
  bool shot_noise = false;
  double read_noise_sigma = 0.0;  // counts
  std::uint64_t seed = 0;

  int max_count() const { return (1 << bit_depth) - 1; }
};

struct DeviceNoise {
  double laser_rin_sigma = 0.0;      // multiplicative, one draw per capture
  double phase_flicker_sigma = 0.0;  // radians, per pixel per capture
  double settle_ms = kDefaultSettleMs;

  static DeviceNoise none();
  static DeviceNoise lab_preset();  // small nonzero preset for demos
  bool any_noise() const {
    return laser_rin_sigma > 0.0 || phase_flicker_sigma > 0.0;
  }
};

// Simulated elapsed device time. In realtime mode advancing also sleeps, to
// emulate the sub-7-fps refresh bound of the modulator.
struct SimClock {
  double sim_ms = 0.0;
  bool realtime = false;

  void advance(double ms);
};

// Emulates one modulator settling period: advances the clock by settle_ms
// (and sleeps for it in realtime mode).
void settle_delay(const DeviceNoise& noise, SimClock& clock);

// Returns a camera whose gain maps the reference maximum exactly to the top
// count (just-saturating exposure). Throws CalibrationError on a black frame.
CameraModel calibrate_exposure(CameraModel cam, const optics::IntensityImage& reference);

// Measurement channel: gain, laser intensity noise, optional shot noise,
// read noise, then quantization and clamping to the count range. With all
// noise off this is a pure deterministic quantizer. Noise draws are keyed by
// (camera seed, frame_index, pixel), so results do not depend on evaluation
// order.
optics::IntensityImage capture(const CameraModel& cam, const DeviceNoise& noise,
                               const optics::IntensityImage& image,
                               std::uint64_t frame_index, bool parallel = true);

// The full SLM -> lens -> camera channel with its own frame counter. Each
// measure() applies phase flicker, propagates, captures, and advances the
// clock by one settle period.
class OpticalBench {
 public:
  OpticalBench(CameraModel cam, DeviceNoise noise, int oversample = 1,
               SimClock* clock = nullptr);

  // Calibrates exposure against the noise-free image of `frame`.
  void calibrate(const optics::SlmFrame& frame);

  optics::IntensityImage measure(const optics::SlmFrame& frame, bool parallel = true);

  const CameraModel& camera() const { return cam_; }
  const DeviceNoise& device_noise() const { return noise_; }
  int oversample() const { return oversample_; }
  std::uint64_t frames_captured() const { return frame_counter_; }
  SimClock* clock() const { return clock_; }

 private:
  CameraModel cam_;
  DeviceNoise noise_;
  int oversample_ = 1;
  SimClock* clock_ = nullptr;
  std::uint64_t frame_counter_ = 0;
};

// Intrinsic resolution limit of the machine: captures a target image of a
// fixed checkerboard frame, then `frames` more captures of the same frame,
// and returns the mean cost against the target. Exactly 0 with all noise
// off. Throws InvalidArgument for frames < 2.
double noise_floor(const CameraModel& cam, const DeviceNoise& noise, int frames,
                   const optics::SlmGeometry& geom, int oversample = 1,
                   SimClock* clock = nullptr);

}  // namespace spim::noise

#endif  // SPIM_NOISE_HPP
