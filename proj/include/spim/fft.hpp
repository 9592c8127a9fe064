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

#ifndef SPIM_FFT_HPP
#define SPIM_FFT_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace spim::fft {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n);

// Precomputed 1-D transform of a fixed length: radix-2 for powers of two,
// Bluestein's chirp-z otherwise. Unnormalized, forward sign e^{-2pi i nk/N}.
// A plan is immutable after construction and safe to execute concurrently.
class Plan1d {
 public:
  explicit Plan1d(std::size_t n);
  ~Plan1d();
  Plan1d(Plan1d&&) noexcept;
  Plan1d& operator=(Plan1d&&) noexcept;

  std::size_t length() const;
  void forward(cplx* data) const;
  void inverse_unnormalized(cplx* data) const;  // conjugate transform, no 1/N

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// In-place unnormalized forward 2-D DFT of a row-major width x height grid,
// DC at (0, 0). Row and column passes run under OpenMP when `parallel` is
// set; each 1-D transform is internally serial, so the output is identical
// for any thread count. Falls back to serial inside an active parallel
// region.
void forward_2d(std::vector<cplx>& data, int width, int height, bool parallel = true);

// Direct-evaluation separable DFT. Serial reference kept for testing the
// fast path and for the kernel benchmark.
std::vector<cplx> reference_dft_2d(const std::vector<cplx>& data, int width, int height);

// Reorders so the DC bin lands at (height/2, width/2).
std::vector<cplx> shift_to_center(const std::vector<cplx>& data, int width, int height);

}  // namespace spim::fft

#endif  // SPIM_FFT_HPP
