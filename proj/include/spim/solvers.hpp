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

#ifndef SPIM_SOLVERS_HPP
#define SPIM_SOLVERS_HPP

#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "spim/core.hpp"
#include "spim/noise.hpp"
#include "spim/optics.hpp"

namespace spim::solve {

enum class RunMode { fast, camera, realtime };
enum class ObjectiveKind { full_image_cost, center_roi_intensity };

RunMode run_mode_from_string(const std::string& name);

// Inverse-temperature trajectory. beta 0 means auto-calibrate from probe
// flips so the median uphill move starts at ~50% acceptance and ends at ~1%.
struct AnnealSchedule {
  enum class Shape { linear, geometric };

  double beta_start = 0.0;
  double beta_end = 0.0;
  Shape shape = Shape::geometric;
  int total_iterations = 0;

  bool calibrated() const { return beta_start > 0.0 && beta_end > 0.0; }
  double beta_at(int iteration) const;  // iteration in [0, total_iterations)
};

struct MhParams {
  int d = 0;  // spins flipped per proposal; 0 = auto from the spin count
  std::uint64_t seed = 1;
  ObjectiveKind objective = ObjectiveKind::center_roi_intensity;

  int flip_count(int n_spins) const;
};

struct GaParams {
  int population = 16;
  double mutation_rate = 0.05;  // per gene
  int elitism = 1;
  std::uint64_t seed = 1;
  long max_evaluations = 0;  // 0 = bounded by generations only
};

struct TraceRow {
  long iteration = 0;
  int t_step = 0;
  double beta = 0.0;
  double objective = 0.0;
  double fidelity = 0.0;
  bool accepted = false;
  double sim_time_ms = 0.0;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  std::vector<std::int8_t> best_spins;
  double best_fidelity = 1.0;
  double best_objective = 0.0;
  long accepted_count = 0;
  long rejected_count = 0;
  long evaluations = 0;
  double sim_time_ms = 0.0;
  double wall_time_ms = 0.0;

  const TraceRow& last() const { return rows.back(); }
};

// The quantity a run minimizes, with incremental propose/accept/reject
// bookkeeping. One objective serves one logical run at a time.
class SpinObjective {
 public:
  virtual ~SpinObjective() = default;

  virtual int spin_count() const = 0;
  virtual double value() const = 0;
  virtual double propose(std::span<const int> flips) = 0;
  virtual void accept() = 0;
  virtual void reject() = 0;
  // Fidelity of the current state against the bound instance (or |sum
  // sigma|/n when no instance is bound).
  virtual double state_fidelity() const = 0;
  virtual double config_fidelity(std::span<const std::int8_t> genes) const = 0;
  virtual const std::vector<std::int8_t>& spins() const = 0;
  // Moves the coupling amplitudes to adiabatic step t.
  virtual void advance_stage(int t) = 0;
  // Non-incremental evaluation; leaves the state at `genes` (GA path).
  virtual double evaluate(std::span<const std::int8_t> genes) = 0;
  virtual long evaluations() const = 0;
  virtual noise::SimClock* sim_clock() const { return nullptr; }
};

// Analytic path: objective (sum_j sigma_j amp_j)^2, O(d) per proposal.
class FastMattisObjective final : public SpinObjective {
 public:
  FastMattisObjective(NppInstance inst, std::vector<std::int8_t> initial,
                      AdiabaticSchedule sched, bool adiabatic,
                      noise::SimClock* clock = nullptr);

  int spin_count() const override { return static_cast<int>(sigma_.size()); }
  double value() const override;
  double propose(std::span<const int> flips) override;
  void accept() override;
  void reject() override;
  double state_fidelity() const override;
  double config_fidelity(std::span<const std::int8_t> genes) const override;
  const std::vector<std::int8_t>& spins() const override { return sigma_; }
  void advance_stage(int t) override;
  double evaluate(std::span<const std::int8_t> genes) override;
  long evaluations() const override { return evals_; }
  noise::SimClock* sim_clock() const override { return clock_; }

 private:
  void tick();
  void refresh_sums();

  NppInstance inst_;
  AdiabaticSchedule sched_;
  bool adiabatic_ = false;
  std::vector<std::int8_t> sigma_;
  std::vector<double> amp_;
  double sum_zeta_ = 0.0;
  long double m_eff_ = 0.0;
  long double m_true_ = 0.0;
  std::vector<int> pending_;
  long double pending_m_eff_ = 0.0;
  long double pending_m_true_ = 0.0;
  noise::SimClock* clock_ = nullptr;
  long evals_ = 0;
};

// Optics settings shared by the camera-path objectives.
struct CameraRunArgs {
  noise::CameraModel camera;
  noise::DeviceNoise device_noise = noise::DeviceNoise::none();
  int roi = 64;
  int oversample = 1;
  noise::SimClock* clock = nullptr;
  bool parallel = true;
};

// Camera path for number partitioning: recompose flipped spins, propagate,
// capture, and read either the centered ROI sum or the full-image cost
// against a saturated delta target. Exposure is calibrated once, on the
// initial frame.
class CameraNppObjective final : public SpinObjective {
 public:
  CameraNppObjective(NppInstance inst, std::vector<std::int8_t> initial,
                     optics::SlmGeometry geom, AdiabaticSchedule sched, bool adiabatic,
                     ObjectiveKind kind, const CameraRunArgs& args);

  int spin_count() const override { return static_cast<int>(sigma_.size()); }
  double value() const override { return value_; }
  double propose(std::span<const int> flips) override;
  void accept() override;
  void reject() override;
  double state_fidelity() const override;
  double config_fidelity(std::span<const std::int8_t> genes) const override;
  const std::vector<std::int8_t>& spins() const override { return sigma_; }
  void advance_stage(int t) override;
  double evaluate(std::span<const std::int8_t> genes) override;
  long evaluations() const override { return static_cast<long>(bench_.frames_captured()); }
  noise::SimClock* sim_clock() const override { return bench_.clock(); }

  const noise::OpticalBench& bench_ref() const { return bench_; }

 private:
  double measure_objective();
  void set_stage_alphas(int t);

  NppInstance inst_;
  AdiabaticSchedule sched_;
  bool adiabatic_ = false;
  ObjectiveKind kind_;
  optics::SlmGeometry geom_;
  std::vector<std::int8_t> sigma_;
  std::vector<double> stage_alpha_;
  optics::SlmFrame frame_;
  noise::OpticalBench bench_;
  optics::TargetIntensity delta_target_;
  int roi_;
  bool parallel_;
  double value_ = 0.0;
  double sum_zeta_ = 0.0;
  long double m_true_ = 0.0;
  std::vector<int> pending_;
  double pending_value_ = 0.0;
  long double pending_m_true_ = 0.0;
};

// Camera path against a captured target pattern (the convergence-demo task):
// objective is the cost of each capture versus the target image. No number
// instance is bound, so fidelity reports |sum sigma| / n.
class CameraPatternObjective final : public SpinObjective {
 public:
  CameraPatternObjective(const SpinConfig& target_pattern,
                         std::vector<std::int8_t> initial, optics::SlmGeometry geom,
                         const CameraRunArgs& args);

  int spin_count() const override { return static_cast<int>(sigma_.size()); }
  double value() const override { return value_; }
  double propose(std::span<const int> flips) override;
  void accept() override;
  void reject() override;
  double state_fidelity() const override;
  double config_fidelity(std::span<const std::int8_t> genes) const override;
  const std::vector<std::int8_t>& spins() const override { return sigma_; }
  void advance_stage(int) override {}
  double evaluate(std::span<const std::int8_t> genes) override;
  long evaluations() const override { return static_cast<long>(bench_.frames_captured()); }
  noise::SimClock* sim_clock() const override { return bench_.clock(); }

 private:
  double measure_objective();

  optics::SlmGeometry geom_;
  std::vector<std::int8_t> sigma_;
  std::vector<double> zero_alpha_;
  optics::SlmFrame frame_;
  noise::OpticalBench bench_;
  optics::TargetIntensity target_;
  bool parallel_;
  double value_ = 0.0;
  std::vector<int> pending_;
  double pending_value_ = 0.0;
};

// Single Metropolis decision: downhill and flat moves always pass; uphill
// passes with probability e^{-beta delta}. Consumes one draw only when
// delta > 0.
bool metropolis_accept(double delta, double beta, std::mt19937_64& gen);

// Random helpers (deterministic per generator state).
std::vector<std::int8_t> random_spins(int n, std::mt19937_64& gen);
std::vector<std::int8_t> balanced_spins(int n, std::mt19937_64& gen);

// GA operators, exposed for direct statistical checks.
std::vector<std::int8_t> ga_crossover(std::span<const std::int8_t> a,
                                      std::span<const std::int8_t> b, std::mt19937_64& gen);
int ga_mutate(std::span<std::int8_t> genes, double rate, std::mt19937_64& gen);

// Metropolis run over the objective with the given schedule. Fills in
// auto-calibrated betas from probe flips when the schedule has none.
RunTrace anneal(SpinObjective& obj, AnnealSchedule sched, const MhParams& params);

// Generational GA over the same objective; stops after `generations` or when
// params.max_evaluations objective evaluations have been spent.
RunTrace ga_evolve(SpinObjective& obj, const GaParams& params, int generations);

struct SolveOptions {
  RunMode mode = RunMode::fast;
  optics::SlmGeometry geom;  // camera modes only; ignored in fast mode
  CameraRunArgs camera;
  noise::SimClock* clock = nullptr;
};

// Full adiabatic run: balanced start, K amplitude stages with
// settle_iterations of Metropolis each, then any remaining budget at the
// final amplitudes. anneal_sched.total_iterations 0 means K * settle.
RunTrace adiabatic_solve(const NppInstance& inst, AdiabaticSchedule sched,
                         AnnealSchedule anneal_sched, MhParams params,
                         const SolveOptions& options = {});

// Convergence-demo runs on the checkerboard target (camera path).
struct CheckerboardResult {
  RunTrace trace;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  double ratio = 1.0;
};

CheckerboardResult checkerboard_mh(const optics::SlmGeometry& geom, AnnealSchedule sched,
                                   MhParams params, const CameraRunArgs& args);
CheckerboardResult checkerboard_ga(const optics::SlmGeometry& geom, GaParams params,
                                   long eval_budget, const CameraRunArgs& args);

}  // namespace spim::solve

#endif  // SPIM_SOLVERS_HPP
