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

#ifndef SPIM_IO_HPP
#define SPIM_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "spim/optics.hpp"
#include "spim/solvers.hpp"

namespace spim::io {

inline constexpr const char* kToolVersion = "1.0.0";

// --- instance files ---------------------------------------------------------
// Readers accept a JSON array of numbers or UTF-8 text with one positive
// decimal per line ('#' comments allowed). Writers emit the JSON form.
std::vector<double> read_numbers(const std::string& path);
void write_instance_json(const std::string& path, const std::vector<double>& numbers);

// --- flat binary image container --------------------------------------------
// Layout (little-endian): magic "SPIMIMG1", u32 width, u32 height, u32 dtype,
// u32 extra_count, extra_count x u32 extra words, then row-major payload.
// dtype 0: float64 intensity; dtype 1: complex128 field (re, im);
// dtype 2: float64 phase frame, extras = {active_x, active_y, active_size,
// pixels_per_spin, quantized}.
void write_image(const std::string& path, const optics::IntensityImage& image);
optics::IntensityImage read_image(const std::string& path);
void write_field(const std::string& path, const optics::FieldImage& field);
void write_frame(const std::string& path, const optics::SlmFrame& frame);
optics::SlmFrame read_frame(const std::string& path);

// Portable graymap (P2) debugging dump, scaled to the image maximum.
void write_pgm(const std::string& path, const optics::IntensityImage& image);

// --- text helpers ------------------------------------------------------------
void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

// Deterministic float formatting for data files.
std::string fmt_g17(double v);
std::string fmt_sci(double v);

// Versioned trace CSV: iteration,t_step,beta,objective,fidelity,accepted,
// sim_time_ms.
std::string trace_csv(const solve::RunTrace& trace);

// --- simple SVG line charts ---------------------------------------------------
struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};
std::string line_chart_svg(const std::vector<Series>& series, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           bool log_y = false);

// --- run manifests -------------------------------------------------------------
std::uint64_t fnv1a64(const std::string& text);

// Writes <dir>/manifest.json recording the tool version, the resolved
// configuration, seeds, and produced files; config_hash pins the run.
void write_manifest(const std::string& dir, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& config,
                    const std::vector<std::uint64_t>& seeds,
                    const std::vector<std::string>& outputs);

}  // namespace spim::io

#endif  // SPIM_IO_HPP
