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

#include "spim/fft.hpp"

#include <cmath>
#include <cstdint>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spim/error.hpp"

namespace spim::fft {

namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Radix-2 iterative Cooley-Tukey with a precomputed twiddle table.
struct Radix2 {
  std::size_t n = 0;
  std::vector<std::uint32_t> bitrev;
  std::vector<cplx> twiddle;  // exp(-2pi i j / n), j < n/2

  explicit Radix2(std::size_t len) : n(len) {
    bitrev.resize(n);
    std::uint32_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t r = 0;
      for (std::uint32_t b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      bitrev[i] = r;
    }
    twiddle.resize(n / 2);
    for (std::size_t j = 0; j < n / 2; ++j) {
      const double ang = -2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
      twiddle[j] = cplx(std::cos(ang), std::sin(ang));
    }
  }

  void run(cplx* a, bool conjugate) const {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = bitrev[i];
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2;
      const std::size_t stride = n / len;
      for (std::size_t base = 0; base < n; base += len) {
        for (std::size_t k = 0; k < half; ++k) {
          cplx w = twiddle[k * stride];
          if (conjugate) w = std::conj(w);
          const cplx t = a[base + k + half] * w;
          const cplx u = a[base + k];
          a[base + k] = u + t;
          a[base + k + half] = u - t;
        }
      }
    }
  }
};

}  // namespace

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

struct Plan1d::Impl {
  std::size_t n = 0;
  std::unique_ptr<Radix2> radix;       // direct path (n power of two)
  // Bluestein path
  std::size_t conv_len = 0;
  std::unique_ptr<Radix2> conv_radix;
  std::vector<cplx> chirp;             // exp(-i pi j^2 / n)
  std::vector<cplx> kernel_fft;        // FFT of the wrapped conjugate chirp

  explicit Impl(std::size_t len) : n(len) {
    if (n == 0) throw InvalidArgument("transform length must be positive");
    if (is_pow2(n)) {
      radix = std::make_unique<Radix2>(n);
      return;
    }
    conv_len = next_pow2(2 * n - 1);
    conv_radix = std::make_unique<Radix2>(conv_len);
    chirp.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      // j^2 mod 2n keeps the chirp angle well conditioned for large j.
      const std::uint64_t q = (static_cast<std::uint64_t>(j) * j) % (2 * n);
      const double ang = -M_PI * static_cast<double>(q) / static_cast<double>(n);
      chirp[j] = cplx(std::cos(ang), std::sin(ang));
    }
    std::vector<cplx> kernel(conv_len, cplx(0.0, 0.0));
    kernel[0] = std::conj(chirp[0]);
    for (std::size_t j = 1; j < n; ++j) {
      kernel[j] = std::conj(chirp[j]);
      kernel[conv_len - j] = std::conj(chirp[j]);
    }
    conv_radix->run(kernel.data(), false);
    kernel_fft = std::move(kernel);
  }

  void bluestein(cplx* data, bool conjugate) const {
    std::vector<cplx> buf(conv_len, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
      const cplx c = conjugate ? std::conj(chirp[j]) : chirp[j];
      buf[j] = data[j] * c;
    }
    conv_radix->run(buf.data(), false);
    if (conjugate) {
      for (std::size_t j = 0; j < conv_len; ++j) buf[j] *= std::conj(kernel_fft[j]);
    } else {
      for (std::size_t j = 0; j < conv_len; ++j) buf[j] *= kernel_fft[j];
    }
    conv_radix->run(buf.data(), true);  // unnormalized inverse
    const double inv = 1.0 / static_cast<double>(conv_len);
    for (std::size_t j = 0; j < n; ++j) {
      const cplx c = conjugate ? std::conj(chirp[j]) : chirp[j];
      data[j] = buf[j] * inv * c;
    }
  }

  void run(cplx* data, bool conjugate) const {
    if (radix) {
      radix->run(data, conjugate);
    } else {
      bluestein(data, conjugate);
    }
  }
};

Plan1d::Plan1d(std::size_t n) : impl_(std::make_unique<Impl>(n)) {}
Plan1d::~Plan1d() = default;
Plan1d::Plan1d(Plan1d&&) noexcept = default;
Plan1d& Plan1d::operator=(Plan1d&&) noexcept = default;

std::size_t Plan1d::length() const { return impl_->n; }

void Plan1d::forward(cplx* data) const { impl_->run(data, false); }

void Plan1d::inverse_unnormalized(cplx* data) const { impl_->run(data, true); }

void forward_2d(std::vector<cplx>& data, int width, int height, bool parallel) {
  if (width <= 0 || height <= 0 ||
      data.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionError("grid is " + std::to_string(data.size()) + " values, expected " +
                         std::to_string(width) + "x" + std::to_string(height));
  }
  const Plan1d row_plan(static_cast<std::size_t>(width));
  const Plan1d col_plan(static_cast<std::size_t>(height));

#ifdef _OPENMP
  const bool use_omp = parallel && !omp_in_parallel();
#else
  const bool use_omp = false;
  (void)parallel;
#endif

#pragma omp parallel for schedule(static) if (use_omp)
  for (int r = 0; r < height; ++r) {
    row_plan.forward(data.data() + static_cast<std::size_t>(r) * width);
  }

#pragma omp parallel for schedule(static) if (use_omp)
  for (int c = 0; c < width; ++c) {
    std::vector<cplx> column(static_cast<std::size_t>(height));
    for (int r = 0; r < height; ++r) column[r] = data[static_cast<std::size_t>(r) * width + c];
    col_plan.forward(column.data());
    for (int r = 0; r < height; ++r) data[static_cast<std::size_t>(r) * width + c] = column[r];
  }
}

std::vector<cplx> reference_dft_2d(const std::vector<cplx>& data, int width, int height) {
  if (data.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw DimensionError("grid size mismatch in reference DFT");
  }
  // Separable direct evaluation: rows, then columns.
  std::vector<cplx> rows(data.size(), cplx(0.0, 0.0));
  for (int r = 0; r < height; ++r) {
    for (int k = 0; k < width; ++k) {
      cplx acc(0.0, 0.0);
      for (int c = 0; c < width; ++c) {
        const double ang = -2.0 * M_PI * static_cast<double>(k) * c / width;
        acc += data[static_cast<std::size_t>(r) * width + c] * cplx(std::cos(ang), std::sin(ang));
      }
      rows[static_cast<std::size_t>(r) * width + k] = acc;
    }
  }
  std::vector<cplx> out(data.size(), cplx(0.0, 0.0));
  for (int c = 0; c < width; ++c) {
    for (int k = 0; k < height; ++k) {
      cplx acc(0.0, 0.0);
      for (int r = 0; r < height; ++r) {
        const double ang = -2.0 * M_PI * static_cast<double>(k) * r / height;
        acc += rows[static_cast<std::size_t>(r) * width + c] * cplx(std::cos(ang), std::sin(ang));
      }
      out[static_cast<std::size_t>(k) * width + c] = acc;
    }
  }
  return out;
}

std::vector<cplx> shift_to_center(const std::vector<cplx>& data, int width, int height) {
  std::vector<cplx> out(data.size());
  const int half_w = width / 2;
  const int half_h = height / 2;
  for (int r = 0; r < height; ++r) {
    const int rr = (r + half_h) % height;
    for (int c = 0; c < width; ++c) {
      const int cc = (c + half_w) % width;
      out[static_cast<std::size_t>(rr) * width + cc] =
          data[static_cast<std::size_t>(r) * width + c];
    }
  }
  return out;
}

}  // namespace spim::fft
