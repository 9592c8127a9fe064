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

#include "spim/fft.hpp"
#include "spim/rng.hpp"

using namespace spim;
using fft::cplx;

namespace {

std::vector<cplx> random_grid(int w, int h, std::mt19937_64& gen) {
  std::vector<cplx> grid(static_cast<std::size_t>(w) * h);
  for (auto& v : grid) {
    v = cplx(2.0 * rng::uniform01(gen) - 1.0, 2.0 * rng::uniform01(gen) - 1.0);
  }
  return grid;
}

// Quadruple-loop DFT; deliberately independent of the separable reference.
std::vector<cplx> brute_dft_2d(const std::vector<cplx>& in, int w, int h) {
  std::vector<cplx> out(in.size());
  for (int ky = 0; ky < h; ++ky) {
    for (int kx = 0; kx < w; ++kx) {
      cplx acc(0.0, 0.0);
      for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
          const double ang = -2.0 * M_PI * (static_cast<double>(kx) * c / w +
                                            static_cast<double>(ky) * r / h);
          acc += in[static_cast<std::size_t>(r) * w + c] * cplx(std::cos(ang), std::sin(ang));
        }
      }
      out[static_cast<std::size_t>(ky) * w + kx] = acc;
    }
  }
  return out;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double grid_norm(const std::vector<cplx>& a) {
  double m = 0.0;
  for (const auto& v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("reference DFT agrees with the quadruple-loop oracle") {
  std::mt19937_64 gen(101);
  for (const auto [w, h] : {std::pair{4, 4}, std::pair{8, 6}, std::pair{5, 7}}) {
    const auto grid = random_grid(w, h, gen);
    const auto ref = fft::reference_dft_2d(grid, w, h);
    const auto brute = brute_dft_2d(grid, w, h);
    CHECK(max_abs_diff(ref, brute) < 1e-9 * std::max(1.0, grid_norm(brute)));
  }
}

TEST_CASE("fast transform matches the reference on power-of-two grids") {
  std::mt19937_64 gen(103);
  for (const auto [w, h] : {std::pair{16, 16}, std::pair{32, 8}, std::pair{64, 64}}) {
    auto grid = random_grid(w, h, gen);
    const auto ref = fft::reference_dft_2d(grid, w, h);
    fft::forward_2d(grid, w, h);
    CHECK(max_abs_diff(grid, ref) < 1e-9 * std::max(1.0, grid_norm(ref)));
  }
}

TEST_CASE("fast transform matches the reference on non-power-of-two grids") {
  std::mt19937_64 gen(107);
  for (const auto [w, h] : {std::pair{12, 20}, std::pair{15, 9}, std::pair{96, 96}}) {
    auto grid = random_grid(w, h, gen);
    const auto ref = fft::reference_dft_2d(grid, w, h);
    fft::forward_2d(grid, w, h);
    CHECK(max_abs_diff(grid, ref) < 1e-9 * std::max(1.0, grid_norm(ref)));
  }
}

TEST_CASE("parallel and serial sweeps produce bit-identical output") {
  std::mt19937_64 gen(109);
  for (const auto [w, h] : {std::pair{64, 64}, std::pair{48, 80}}) {
    auto a = random_grid(w, h, gen);
    auto b = a;
    fft::forward_2d(a, w, h, /*parallel=*/true);
    fft::forward_2d(b, w, h, /*parallel=*/false);
    CHECK(a == b);
  }
}

TEST_CASE("Parseval holds under the unnormalized convention") {
  std::mt19937_64 gen(113);
  for (const auto [w, h] : {std::pair{32, 32}, std::pair{24, 40}}) {
    auto grid = random_grid(w, h, gen);
    double input_power = 0.0;
    for (const auto& v : grid) input_power += std::norm(v);
    fft::forward_2d(grid, w, h);
    double output_power = 0.0;
    for (const auto& v : grid) output_power += std::norm(v);
    CHECK(output_power ==
          doctest::Approx(static_cast<double>(w) * h * input_power).epsilon(1e-9));
  }
}

TEST_CASE("DFT of a constant grid is a DC spike") {
  const int w = 32;
  const int h = 32;
  std::vector<cplx> grid(static_cast<std::size_t>(w) * h, cplx(1.0, 0.0));
  fft::forward_2d(grid, w, h);
  CHECK(std::abs(grid[0]) == doctest::Approx(static_cast<double>(w) * h).epsilon(1e-12));
  double off_dc = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) off_dc = std::max(off_dc, std::abs(grid[i]));
  CHECK(off_dc < 1e-9 * w * h);

  const auto shifted = fft::shift_to_center(grid, w, h);
  CHECK(std::abs(shifted[static_cast<std::size_t>(h / 2) * w + w / 2]) ==
        doctest::Approx(static_cast<double>(w) * h).epsilon(1e-12));
}

TEST_CASE("length-1 plans are identities") {
  fft::Plan1d plan(1);
  cplx v(0.3, -0.7);
  plan.forward(&v);
  CHECK(v == cplx(0.3, -0.7));
}
