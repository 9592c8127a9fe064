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

#include "spim/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spim/error.hpp"

namespace spim::io {

namespace {

constexpr char kMagic[8] = {'S', 'P', 'I', 'M', 'I', 'M', 'G', '1'};

void put_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void put_f64(std::ostream& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw InvalidArgument("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw InvalidArgument("cannot open '" + path + "' for reading");
  return in;
}

void write_header(std::ostream& out, int width, int height, std::uint32_t dtype,
                  const std::vector<std::uint32_t>& extras) {
  out.write(kMagic, 8);
  put_u32(out, static_cast<std::uint32_t>(width));
  put_u32(out, static_cast<std::uint32_t>(height));
  put_u32(out, dtype);
  put_u32(out, static_cast<std::uint32_t>(extras.size()));
  for (std::uint32_t e : extras) put_u32(out, e);
}

struct Header {
  int width;
  int height;
  std::uint32_t dtype;
  std::vector<std::uint32_t> extras;
};

Header read_header(std::istream& in, const std::string& path) {
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kMagic, 8) != 0) {
    throw InvalidArgument("'" + path + "' is not a spim image container");
  }
  Header h;
  h.width = static_cast<int>(get_u32(in));
  h.height = static_cast<int>(get_u32(in));
  h.dtype = get_u32(in);
  const std::uint32_t extra_count = get_u32(in);
  h.extras.resize(extra_count);
  for (std::uint32_t i = 0; i < extra_count; ++i) h.extras[i] = get_u32(in);
  return h;
}

}  // namespace

std::vector<double> read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open instance file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw InvalidInstance("instance file is empty");

  std::vector<double> numbers;
  if (text[first] == '[') {
    const auto parsed = nlohmann::json::parse(text, nullptr, false);
    if (parsed.is_discarded() || !parsed.is_array()) {
      throw InvalidInstance("instance file is not a valid JSON array");
    }
    for (const auto& v : parsed) {
      if (!v.is_number()) throw InvalidInstance("instance array holds a non-number");
      numbers.push_back(v.get<double>());
    }
    return numbers;
  }

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(line.substr(begin), &used);
    } catch (const std::exception&) {
      throw InvalidInstance("cannot parse instance line: '" + line + "'");
    }
    numbers.push_back(v);
  }
  return numbers;
}

void write_instance_json(const std::string& path, const std::vector<double>& numbers) {
  nlohmann::json j = numbers;
  auto out = open_out(path, false);
  out << j.dump() << "\n";
}

void write_image(const std::string& path, const optics::IntensityImage& image) {
  auto out = open_out(path, true);
  write_header(out, image.width, image.height, 0, {static_cast<std::uint32_t>(image.oversample)});
  for (double v : image.values) put_f64(out, v);
}

optics::IntensityImage read_image(const std::string& path) {
  auto in = open_in(path, true);
  const Header h = read_header(in, path);
  if (h.dtype != 0) throw InvalidArgument("'" + path + "' does not hold an intensity image");
  optics::IntensityImage img;
  img.width = h.width;
  img.height = h.height;
  img.oversample = h.extras.empty() ? 1 : static_cast<int>(h.extras[0]);
  img.values.resize(static_cast<std::size_t>(h.width) * h.height);
  for (double& v : img.values) v = get_f64(in);
  if (!in) throw InvalidArgument("'" + path + "' is truncated");
  return img;
}

void write_field(const std::string& path, const optics::FieldImage& field) {
  auto out = open_out(path, true);
  write_header(out, field.width, field.height, 1, {static_cast<std::uint32_t>(field.oversample)});
  for (const auto& v : field.values) {
    put_f64(out, v.real());
    put_f64(out, v.imag());
  }
}

void write_frame(const std::string& path, const optics::SlmFrame& frame) {
  auto out = open_out(path, true);
  write_header(out, frame.width, frame.height, 2,
               {static_cast<std::uint32_t>(frame.active_x),
                static_cast<std::uint32_t>(frame.active_y),
                static_cast<std::uint32_t>(frame.active_size),
                static_cast<std::uint32_t>(frame.pixels_per_spin),
                frame.quantized ? 1u : 0u});
  for (double v : frame.phase) put_f64(out, v);
}

optics::SlmFrame read_frame(const std::string& path) {
  auto in = open_in(path, true);
  const Header h = read_header(in, path);
  if (h.dtype != 2 || h.extras.size() != 5) {
    throw InvalidArgument("'" + path + "' does not hold a phase frame");
  }
  optics::SlmFrame frame;
  frame.width = h.width;
  frame.height = h.height;
  frame.active_x = static_cast<int>(h.extras[0]);
  frame.active_y = static_cast<int>(h.extras[1]);
  frame.active_size = static_cast<int>(h.extras[2]);
  frame.pixels_per_spin = static_cast<int>(h.extras[3]);
  frame.quantized = h.extras[4] != 0;
  frame.phase.resize(static_cast<std::size_t>(h.width) * h.height);
  for (double& v : frame.phase) v = get_f64(in);
  if (!in) throw InvalidArgument("'" + path + "' is truncated");
  return frame;
}

void write_pgm(const std::string& path, const optics::IntensityImage& image) {
  auto out = open_out(path, false);
  const double peak = image.max_value();
  const double scale = peak > 0.0 ? 255.0 / peak : 0.0;
  out << "P2\n" << image.width << " " << image.height << "\n255\n";
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      const double v = image.values[static_cast<std::size_t>(r) * image.width + c];
      out << static_cast<int>(std::lround(v * scale));
      out << (c + 1 == image.width ? '\n' : ' ');
    }
  }
}

void write_text(const std::string& path, const std::string& content) {
  auto out = open_out(path, false);
  out << content;
}

std::string read_text(const std::string& path) {
  auto in = open_in(path, false);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fmt_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  return buf;
}

std::string trace_csv(const solve::RunTrace& trace) {
  std::string out = "# spim-trace v1\n";
  out += "iteration,t_step,beta,objective,fidelity,accepted,sim_time_ms\n";
  for (const auto& row : trace.rows) {
    out += std::to_string(row.iteration);
    out += ',';
    out += std::to_string(row.t_step);
    out += ',';
    out += fmt_sci(row.beta);
    out += ',';
    out += fmt_sci(row.objective);
    out += ',';
    out += fmt_sci(row.fidelity);
    out += ',';
    out += row.accepted ? '1' : '0';
    out += ',';
    out += fmt_sci(row.sim_time_ms);
    out += '\n';
  }
  return out;
}

std::string line_chart_svg(const std::vector<Series>& series, const std::string& title,
                           const std::string& x_label, const std::string& y_label,
                           bool log_y) {
  constexpr int kWidth = 720;
  constexpr int kHeight = 440;
  constexpr int kMargin = 60;
  const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  const auto y_of = [&](double y) { return log_y ? std::log10(std::max(y, 1e-300)) : y; };
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double xv = s.x[i];
      const double yv = y_of(s.y[i]);
      if (first) {
        x_min = x_max = xv;
        y_min = y_max = yv;
        first = false;
      } else {
        x_min = std::min(x_min, xv);
        x_max = std::max(x_max, xv);
        y_min = std::min(y_min, yv);
        y_max = std::max(y_max, yv);
      }
    }
  }
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;

  const auto px = [&](double x) {
    return kMargin + (x - x_min) / (x_max - x_min) * (kWidth - 2 * kMargin);
  };
  const auto py = [&](double y) {
    return kHeight - kMargin - (y_of(y) - y_min) / (y_max - y_min) * (kHeight - 2 * kMargin);
  };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
      << kHeight << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='16'>"
      << title << "</text>\n";
  svg << "<line x1='" << kMargin << "' y1='" << kHeight - kMargin << "' x2='"
      << kWidth - kMargin << "' y2='" << kHeight - kMargin << "' stroke='black'/>\n";
  svg << "<line x1='" << kMargin << "' y1='" << kMargin << "' x2='" << kMargin << "' y2='"
      << kHeight - kMargin << "' stroke='black'/>\n";
  svg << "<text x='" << kWidth / 2 << "' y='" << kHeight - 16
      << "' text-anchor='middle' font-size='12'>" << x_label << "</text>\n";
  svg << "<text x='18' y='" << kHeight / 2 << "' text-anchor='middle' font-size='12' "
      << "transform='rotate(-90 18 " << kHeight / 2 << ")'>" << y_label
      << (log_y ? " (log10)" : "") << "</text>\n";

  int color = 0;
  for (const auto& s : series) {
    svg << "<polyline fill='none' stroke='" << palette[color % 5] << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      svg << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
    }
    svg << "'/>\n";
    svg << "<text x='" << kWidth - kMargin + 4 << "' y='" << kMargin + 16 * color
        << "' font-size='11' fill='" << palette[color % 5] << "'>" << s.label << "</text>\n";
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

void write_manifest(const std::string& dir, const std::string& command,
                    const std::vector<std::pair<std::string, std::string>>& config,
                    const std::vector<std::uint64_t>& seeds,
                    const std::vector<std::string>& outputs) {
  nlohmann::json j;
  j["tool"] = "spim-sim";
  j["version"] = kToolVersion;
  j["command"] = command;
  nlohmann::json cfg = nlohmann::json::object();
  std::string canonical = command;
  for (const auto& [key, value] : config) {
    cfg[key] = value;
    canonical += "|" + key + "=" + value;
  }
  j["config"] = cfg;
  j["seeds"] = seeds;
  j["outputs"] = outputs;
  char hash[19];
  std::snprintf(hash, sizeof(hash), "0x%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical)));
  j["config_hash"] = hash;
  write_text(dir + "/manifest.json", j.dump(2) + "\n");
}

}  // namespace spim::io
