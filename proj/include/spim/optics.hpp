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

#ifndef SPIM_OPTICS_HPP
#define SPIM_OPTICS_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "spim/core.hpp"
#include "spim/fft.hpp"

namespace spim::optics {

using cplx = std::complex<double>;

constexpr int kPhaseLevels = 256;  // 8-bit modulator
constexpr double kPhaseStep = 2.0 * M_PI / kPhaseLevels;
constexpr int kMacroPixel = 2;  // macropixel edge, fixed

// Snaps an angle to the nearest of the 256 modulator levels in [0, 2pi).
double quantize_phase(double theta);

// SLM pixel-grid geometry. The active window holds spin_side x spin_side
// spins of pixels_per_spin x pixels_per_spin pixels each; the border is
// inactive area carrying the fixed checkerboard. pixels_per_spin must be a
// multiple of 4 so every spin holds a balanced count of each macropixel
// sign, and the border must be even so the checkerboard parity lattice stays
// macropixel-aligned.
struct SlmGeometry {
  int spin_side = 16;        // S
  int pixels_per_spin = 16;  // M
  int border = 0;            // inactive margin on each side, pixels
  bool quantize_phase = true;

  int active_size() const { return spin_side * pixels_per_spin; }
  int frame_size() const { return active_size() + 2 * border; }
  void validate() const;

  static SlmGeometry for_spins(int spin_side);  // M per the hardware defaults
};

// A composed frame of per-pixel phase delays in [0, 2pi).
struct SlmFrame {
  int width = 0;
  int height = 0;
  int active_x = 0;      // active window origin
  int active_y = 0;
  int active_size = 0;
  int pixels_per_spin = 0;
  bool quantized = false;
  std::vector<double> phase;

  double& at(int row, int col) { return phase[static_cast<std::size_t>(row) * width + col]; }
  double at(int row, int col) const { return phase[static_cast<std::size_t>(row) * width + col]; }
  int spin_side() const { return active_size / pixels_per_spin; }
};

struct FieldImage {
  int width = 0;
  int height = 0;
  int oversample = 1;
  std::vector<cplx> values;  // DC at (height/2, width/2)

  int center_x() const { return width / 2; }
  int center_y() const { return height / 2; }
};

struct IntensityImage {
  int width = 0;
  int height = 0;
  int oversample = 1;
  std::vector<double> values;

  int center_x() const { return width / 2; }
  int center_y() const { return height / 2; }
  double max_value() const;
};

struct TargetIntensity {
  enum class Kind { delta_at_center, captured_pattern };
  Kind kind = Kind::delta_at_center;
  int width = 0;
  int height = 0;
  std::vector<double> values;

  static TargetIntensity delta(int width, int height, double peak);
  static TargetIntensity from_image(const IntensityImage& image);
};

// Optional illumination envelope; sigma 0 means a plane wave of unit
// amplitude over the whole frame.
struct Illumination {
  double gaussian_sigma = 0.0;
};

// Superimposes the spin mask (pi/2 or 3pi/2), the macropixel checkerboard
// sign, and the per-spin amplitude phase: theta = s + c * alpha_spin. The
// inactive border carries the fixed checkerboard. `alphas` has one entry per
// spin (radians in [0, pi/2)).
SlmFrame compose_phase(const SpinConfig& spins, std::span<const double> alphas,
                       const SlmGeometry& geom);

// Rewrites only the block belonging to `spin_index`; used for d-flip updates.
void recompose_spin(SlmFrame& frame, int spin_index, std::int8_t spin, double alpha,
                    bool quantize);

// Propagates the frame to the readout plane: unnormalized 2-D DFT of the
// complex field e^{i theta}, zero-padded by `oversample`, DC at the image
// center. `flicker` optionally adds a per-pixel phase perturbation (radians)
// before the transform.
FieldImage forward_field(const SlmFrame& frame, int oversample = 1,
                         const Illumination& illum = {}, bool parallel = true,
                         std::span<const double> flicker = {});

IntensityImage intensity_of(const FieldImage& field, bool parallel = true);

// Sum of the centered roi x roi window. roi = 1 reads the DC bin alone.
double center_window_sum(const IntensityImage& image, int roi);

// Composes forward propagation and the windowed readout for a frame.
double center_intensity(const SlmFrame& frame, int roi, int oversample = 1,
                        bool parallel = true);

// Sum of squared differences against the target (Eq. of the feedback loop).
double cost(const IntensityImage& image, const TargetIntensity& target,
            bool parallel = true);

// Total incident power; `per_pixel` divides by the pixel count.
double total_energy(const IntensityImage& image, bool per_pixel = false);

// Rank-1 coupling matrix J_mn = -2 kappa zeta_m zeta_n for the
// delta-at-center target (kappa = 1, the sinc^2 envelope is 1 at DC).
std::vector<double> coupling_matrix(const NppInstance& inst, const TargetIntensity& target);

// Analytic DC-bin intensity of a noise-free composed frame:
// M^4 (sum_a sigma_a * amp_a)^2 where amp_a is the amplitude actually
// encoded (cos of the quantized phase offset when quantization is on). This
// is the O(n) oracle the optics path must reproduce.
double analytic_dc_intensity(const SpinConfig& spins, std::span<const double> alphas,
                             const SlmGeometry& geom);

}  // namespace spim::optics

#endif  // SPIM_OPTICS_HPP
