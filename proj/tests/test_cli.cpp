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

// End-to-end contract tests against the installed binary (exit codes,
// artifacts, determinism). SPIM_SIM_BIN is injected by the build.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("spim-cli-test-" + std::to_string(::getpid()) + "-" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string sub(const std::string& name) const { return (path / name).string(); }
};

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args, const TempDir& dir) {
  const std::string out_file = dir.sub("stdout-" + std::to_string(std::rand()) + ".txt");
  const std::string command =
      std::string(SPIM_SIM_BIN) + " " + args + " > " + out_file + " 2>/dev/null";
  const int status = std::system(command.c_str());
  std::ifstream in(out_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return RunResult{WEXITSTATUS(status), buffer.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

double parse_field(const std::string& text, const std::string& key) {
  const auto pos = text.find(key + "=");
  REQUIRE(pos != std::string::npos);
  return std::stod(text.substr(pos + key.size() + 1));
}

}  // namespace

TEST_CASE("solve on a generated instance writes artifacts and a summary") {
  TempDir dir;
  const RunResult r = run_cli(
      "solve --n 64 --seed 7 --mode fast --out " + dir.sub("run"), dir);
  CHECK(r.exit_code == 0);
  // Regression bound pinned after the first oracle-checked run (typical
  // value is ~5e-6; 1e-2 guards against gross regressions).
  CHECK(parse_field(r.stdout_text, "fidelity") <= 1e-2);
  CHECK(fs::exists(dir.sub("run/trace.csv")));
  CHECK(fs::exists(dir.sub("run/partition.json")));
  CHECK(fs::exists(dir.sub("run/manifest.json")));

  const auto manifest = nlohmann::json::parse(slurp(dir.sub("run/manifest.json")));
  CHECK(manifest["tool"] == "spim-sim");
  CHECK(manifest["seeds"][0] == 7);
}

TEST_CASE("solve splits [1,1] perfectly") {
  TempDir dir;
  std::ofstream(dir.sub("pair.json")) << "[1, 1]\n";
  const RunResult r = run_cli(
      "solve --instance " + dir.sub("pair.json") + " --out " + dir.sub("run"), dir);
  CHECK(r.exit_code == 0);
  CHECK(parse_field(r.stdout_text, "fidelity") == 0.0);
  const auto partition = nlohmann::json::parse(slurp(dir.sub("run/partition.json")));
  CHECK(partition["subset_a"].size() == 1);
  CHECK(partition["subset_b"].size() == 1);
  CHECK(partition["sum_a"] == 1.0);
  CHECK(partition["sum_b"] == 1.0);
  CHECK(partition["residual"] == 0.0);
}

TEST_CASE("missing instance file exits 2 without partial outputs") {
  TempDir dir;
  const RunResult r = run_cli(
      "solve --instance " + dir.sub("nope.json") + " --out " + dir.sub("run"), dir);
  CHECK(r.exit_code == 2);
  CHECK_FALSE(fs::exists(dir.sub("run")));
}

TEST_CASE("checkerboard with zero iterations reports ratio 1") {
  TempDir dir;
  const RunResult r = run_cli(
      "checkerboard --algo mh --spins 4 --pixels-per-spin 8 --iterations 0 --out " +
          dir.sub("run"),
      dir);
  CHECK(r.exit_code == 0);
  CHECK(parse_field(r.stdout_text, "ratio") == 1.0);
}

TEST_CASE("noise-floor prints zero without noise") {
  TempDir dir;
  const RunResult r = run_cli(
      "noise-floor --spins 4 --pixels-per-spin 8 --frames 4 --out " + dir.sub("run"), dir);
  CHECK(r.exit_code == 0);
  CHECK(parse_field(r.stdout_text, "noise_floor") == 0.0);
}

TEST_CASE("bench emits one record per cell plus reference data") {
  TempDir dir;
  const RunResult r = run_cli(
      "bench --sizes 9,16,25 --seeds 2 --solvers kk,random --random-samples 2000 --out " +
          dir.sub("run"),
      dir);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir.sub("run/records.csv"));
  // Header comment + column line + 3 sizes x 2 seeds x 2 solvers.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 12);
  CHECK(fs::exists(dir.sub("run/reference_table.json")));
  CHECK(fs::exists(dir.sub("run/timings.csv")));

  const auto reference = nlohmann::json::parse(slurp(dir.sub("run/reference_table.json")));
  CHECK(reference["origin"] == "literature");
}

TEST_CASE("scaling emits one row per size") {
  TempDir dir;
  const RunResult r = run_cli(
      "scaling --sizes 16,25 --seeds 2 --steps 8 --settle 8 --svg --out " + dir.sub("run"),
      dir);
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir.sub("run/scaling.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 2 + 2);
  CHECK(fs::exists(dir.sub("run/scaling.svg")));
}

TEST_CASE("solve re-runs are byte-identical") {
  TempDir dir;
  const RunResult a = run_cli(
      "solve --n 25 --seed 3 --steps 8 --settle 8 --out " + dir.sub("a"), dir);
  const RunResult b = run_cli(
      "solve --n 25 --seed 3 --steps 8 --settle 8 --out " + dir.sub("b"), dir);
  CHECK(a.exit_code == 0);
  CHECK(b.exit_code == 0);
  CHECK(slurp(dir.sub("a/trace.csv")) == slurp(dir.sub("b/trace.csv")));
  CHECK(slurp(dir.sub("a/partition.json")) == slurp(dir.sub("b/partition.json")));
}

TEST_CASE("config file values load and flags win") {
  TempDir dir;
  std::ofstream(dir.sub("run.cfg")) << "[solve]\nn=16\nseed=9\nsteps=8\nsettle=8\n";
  const RunResult a = run_cli(
      "solve --config " + dir.sub("run.cfg") + " --out " + dir.sub("a"), dir);
  CHECK(a.exit_code == 0);
  const auto manifest_a = nlohmann::json::parse(slurp(dir.sub("a/manifest.json")));
  CHECK(manifest_a["config"]["n"] == "16");

  const RunResult b = run_cli(
      "solve --config " + dir.sub("run.cfg") + " --n 25 --out " + dir.sub("b"), dir);
  CHECK(b.exit_code == 0);
  const auto manifest_b = nlohmann::json::parse(slurp(dir.sub("b/manifest.json")));
  CHECK(manifest_b["config"]["n"] == "25");
}

TEST_CASE("bad flag values exit 2") {
  TempDir dir;
  const RunResult r = run_cli("solve --mode warp --out " + dir.sub("run"), dir);
  CHECK(r.exit_code == 2);
}
