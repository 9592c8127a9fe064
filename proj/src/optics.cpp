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

#include "spim/optics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spim/error.hpp"

namespace spim::optics {

namespace {

constexpr double kSpinUpPhase = M_PI / 2.0;        // sigma = +1
constexpr double kSpinDownPhase = 3.0 * M_PI / 2.0;  // sigma = -1

// Checkerboard sign of the macropixel containing frame pixel (row, col):
// +1 when the macropixel coordinate parity is even.
inline int checker_sign(int row, int col) {
  return (((row / kMacroPixel) + (col / kMacroPixel)) % 2 == 0) ? 1 : -1;
}

inline bool use_parallel(bool requested) {
#ifdef _OPENMP
  return requested && !omp_in_parallel();
#else
  (void)requested;
  return false;
#endif
}

// Deterministic sum: per-row partials combined in row order, so the result
// is identical for any thread count.
double deterministic_sum_rows(const std::vector<double>& values, int width, int height,
                              bool parallel) {
  std::vector<double> partial(height, 0.0);
  const bool par = use_parallel(parallel);
#pragma omp parallel for schedule(static) if (par)
  for (int r = 0; r < height; ++r) {
    double acc = 0.0;
    const double* row = values.data() + static_cast<std::size_t>(r) * width;
    for (int c = 0; c < width; ++c) acc += row[c];
    partial[r] = acc;
  }
  double total = 0.0;
  for (int r = 0; r < height; ++r) total += partial[r];
  return total;
}

}  // namespace

double quantize_phase(double theta) {
  const long level = std::lround(theta / kPhaseStep);
  const long wrapped = ((level % kPhaseLevels) + kPhaseLevels) % kPhaseLevels;
  return static_cast<double>(wrapped) * kPhaseStep;
}

void SlmGeometry::validate() const {
  if (spin_side < 1) throw GeometryError("spin_side must be >= 1");
  if (pixels_per_spin < 4 || pixels_per_spin % 4 != 0) {
    throw GeometryError("pixels_per_spin must be a positive multiple of 4, got " +
                        std::to_string(pixels_per_spin));
  }
  if (border < 0 || border % 2 != 0) {
    throw GeometryError("border must be a nonnegative even pixel count, got " +
                        std::to_string(border));
  }
}

SlmGeometry SlmGeometry::for_spins(int spin_side) {
  SlmGeometry geom;
  geom.spin_side = spin_side;
  // 256x256 active area up to S = 32, 512x512 above (M = 4 at S = 128).
  if (spin_side <= 32) {
    geom.pixels_per_spin = std::max(4, 256 / spin_side / 4 * 4);
  } else {
    geom.pixels_per_spin = std::max(4, 512 / spin_side / 4 * 4);
  }
  return geom;
}

double IntensityImage::max_value() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, v);
  return m;
}

TargetIntensity TargetIntensity::delta(int width, int height, double peak) {
  TargetIntensity t;
  t.kind = Kind::delta_at_center;
  t.width = width;
  t.height = height;
  t.values.assign(static_cast<std::size_t>(width) * height, 0.0);
  t.values[static_cast<std::size_t>(height / 2) * width + width / 2] = peak;
  return t;
}

TargetIntensity TargetIntensity::from_image(const IntensityImage& image) {
  TargetIntensity t;
  t.kind = Kind::captured_pattern;
  t.width = image.width;
  t.height = image.height;
  t.values = image.values;
  return t;
}

SlmFrame compose_phase(const SpinConfig& spins, std::span<const double> alphas,
                       const SlmGeometry& geom) {
  geom.validate();
  if (spins.side != geom.spin_side) {
    throw DimensionError("spin lattice side " + std::to_string(spins.side) +
                         " != geometry spin_side " + std::to_string(geom.spin_side));
  }
  if (alphas.size() != spins.spins.size()) {
    throw DimensionError("need one amplitude phase per spin");
  }

  SlmFrame frame;
  frame.width = geom.frame_size();
  frame.height = geom.frame_size();
  frame.active_x = geom.border;
  frame.active_y = geom.border;
  frame.active_size = geom.active_size();
  frame.pixels_per_spin = geom.pixels_per_spin;
  frame.quantized = geom.quantize_phase;
  frame.phase.assign(static_cast<std::size_t>(frame.width) * frame.height, 0.0);

  // Fixed checkerboard over the whole frame first (the border keeps it).
  for (int r = 0; r < frame.height; ++r) {
    for (int c = 0; c < frame.width; ++c) {
      frame.at(r, c) = checker_sign(r, c) > 0 ? kSpinUpPhase : kSpinDownPhase;
    }
  }

  const int S = geom.spin_side;
  for (int sr = 0; sr < S; ++sr) {
    for (int sc = 0; sc < S; ++sc) {
      const int idx = sr * S + sc;
      recompose_spin(frame, idx, spins.spins[idx], alphas[idx], geom.quantize_phase);
    }
  }
  return frame;
}

void recompose_spin(SlmFrame& frame, int spin_index, std::int8_t spin, double alpha,
                    bool quantize) {
  const int S = frame.spin_side();
  const int M = frame.pixels_per_spin;
  const int sr = spin_index / S;
  const int sc = spin_index % S;
  const double base = (spin > 0) ? kSpinUpPhase : kSpinDownPhase;
  const int row0 = frame.active_y + sr * M;
  const int col0 = frame.active_x + sc * M;
  for (int r = row0; r < row0 + M; ++r) {
    for (int c = col0; c < col0 + M; ++c) {
      double theta = base + checker_sign(r, c) * alpha;
      if (quantize) theta = quantize_phase(theta);
      frame.at(r, c) = theta;
    }
  }
}

FieldImage forward_field(const SlmFrame& frame, int oversample, const Illumination& illum,
                         bool parallel, std::span<const double> flicker) {
  if (oversample < 1) throw InvalidArgument("oversample must be >= 1");
  if (!flicker.empty() && flicker.size() != frame.phase.size()) {
    throw DimensionError("flicker array must match the frame pixel count");
  }
  const int gw = frame.width * oversample;
  const int gh = frame.height * oversample;

  std::vector<cplx> grid(static_cast<std::size_t>(gw) * gh, cplx(0.0, 0.0));
  const double cx = (frame.width - 1) / 2.0;
  const double cy = (frame.height - 1) / 2.0;
  const bool gaussian = illum.gaussian_sigma > 0.0;
  const double inv_two_sigma2 =
      gaussian ? 1.0 / (2.0 * illum.gaussian_sigma * illum.gaussian_sigma) : 0.0;

  const bool par = use_parallel(parallel);
#pragma omp parallel for schedule(static) if (par)
  for (int r = 0; r < frame.height; ++r) {
    for (int c = 0; c < frame.width; ++c) {
      const std::size_t src = static_cast<std::size_t>(r) * frame.width + c;
      double theta = frame.phase[src];
      if (!flicker.empty()) theta += flicker[src];
      double amp = 1.0;
      if (gaussian) {
        const double dx = c - cx;
        const double dy = r - cy;
        amp = std::exp(-(dx * dx + dy * dy) * inv_two_sigma2);
      }
      grid[static_cast<std::size_t>(r) * gw + c] = amp * cplx(std::cos(theta), std::sin(theta));
    }
  }

  fft::forward_2d(grid, gw, gh, parallel);

  FieldImage out;
  out.width = gw;
  out.height = gh;
  out.oversample = oversample;
  out.values = fft::shift_to_center(grid, gw, gh);
  return out;
}

IntensityImage intensity_of(const FieldImage& field, bool parallel) {
  IntensityImage img;
  img.width = field.width;
  img.height = field.height;
  img.oversample = field.oversample;
  img.values.resize(field.values.size());
  const bool par = use_parallel(parallel);
#pragma omp parallel for schedule(static) if (par)
  for (long i = 0; i < static_cast<long>(field.values.size()); ++i) {
    img.values[i] = std::norm(field.values[i]);
  }
  return img;
}

double center_window_sum(const IntensityImage& image, int roi) {
  if (roi < 1 || roi > image.width || roi > image.height) {
    throw GeometryError("roi " + std::to_string(roi) + " outside image " +
                        std::to_string(image.width) + "x" + std::to_string(image.height));
  }
  const int row0 = image.center_y() - roi / 2;
  const int col0 = image.center_x() - roi / 2;
  double total = 0.0;
  for (int r = row0; r < row0 + roi; ++r) {
    double acc = 0.0;
    for (int c = col0; c < col0 + roi; ++c) {
      acc += image.values[static_cast<std::size_t>(r) * image.width + c];
    }
    total += acc;
  }
  return total;
}

double center_intensity(const SlmFrame& frame, int roi, int oversample, bool parallel) {
  const FieldImage field = forward_field(frame, oversample, {}, parallel);
  const IntensityImage img = intensity_of(field, parallel);
  return center_window_sum(img, roi);
}

double cost(const IntensityImage& image, const TargetIntensity& target, bool parallel) {
  if (image.width != target.width || image.height != target.height) {
    throw DimensionError("image and target dimensions differ");
  }
  std::vector<double> partial(image.height, 0.0);
  const bool par = use_parallel(parallel);
#pragma omp parallel for schedule(static) if (par)
  for (int r = 0; r < image.height; ++r) {
    double acc = 0.0;
    const std::size_t base = static_cast<std::size_t>(r) * image.width;
    for (int c = 0; c < image.width; ++c) {
      const double d = image.values[base + c] - target.values[base + c];
      acc += d * d;
    }
    partial[r] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double total_energy(const IntensityImage& image, bool per_pixel) {
  const double s = deterministic_sum_rows(image.values, image.width, image.height, true);
  return per_pixel ? s / static_cast<double>(image.values.size()) : s;
}

std::vector<double> coupling_matrix(const NppInstance& inst, const TargetIntensity& target) {
  if (target.kind != TargetIntensity::Kind::delta_at_center) {
    throw NotSupported("coupling matrix is only defined for the delta-at-center target");
  }
  const std::size_t n = inst.zeta.size();
  std::vector<double> j(n * n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      j[m * n + k] = -2.0 * inst.zeta[m] * inst.zeta[k];
    }
  }
  return j;
}

double analytic_dc_intensity(const SpinConfig& spins, std::span<const double> alphas,
                             const SlmGeometry& geom) {
  if (alphas.size() != spins.spins.size()) {
    throw DimensionError("need one amplitude phase per spin");
  }
  // Each spin contributes M^2/2 pixels at s + alpha and M^2/2 at s - alpha;
  // the balanced inactive checkerboard contributes nothing at DC. Grouping
  // the pair reproduces M^2 sigma cos(alpha) per spin, with the same 8-bit
  // snapping the frame applies.
  cplx sum(0.0, 0.0);
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const double base = (spins.spins[a] > 0) ? M_PI / 2.0 : 3.0 * M_PI / 2.0;
    double plus = base + alphas[a];
    double minus = base - alphas[a];
    if (geom.quantize_phase) {
      plus = quantize_phase(plus);
      minus = quantize_phase(minus);
    }
    sum += 0.5 * (cplx(std::cos(plus), std::sin(plus)) +
                  cplx(std::cos(minus), std::sin(minus)));
  }
  const double m2 = static_cast<double>(geom.pixels_per_spin) * geom.pixels_per_spin;
  return m2 * m2 * std::norm(sum);
}

}  // namespace spim::optics
