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

#include "spim/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "spim/error.hpp"
#include "spim/rng.hpp"

namespace spim::solve {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Samples d distinct indices in [0, n) (Floyd's algorithm); output sorted.
std::vector<int> sample_flips(int n, int d, std::mt19937_64& gen) {
  std::vector<int> picks;
  picks.reserve(d);
  for (int j = n - d; j < n; ++j) {
    const int t = static_cast<int>(rng::uniform_index(gen, static_cast<std::uint64_t>(j) + 1));
    if (std::find(picks.begin(), picks.end(), t) != picks.end()) {
      picks.push_back(j);
    } else {
      picks.push_back(t);
    }
  }
  std::sort(picks.begin(), picks.end());
  return picks;
}

// Probes single proposals to find the typical uphill move size, then pins
// beta so that move starts at ~50% acceptance and ends at ~1%.
void calibrate_schedule(AnnealSchedule& sched, SpinObjective& obj, const MhParams& params,
                        std::mt19937_64& gen) {
  if (sched.calibrated()) return;
  const int n = obj.spin_count();
  const int d = params.flip_count(n);
  const double base = obj.value();
  std::vector<double> magnitudes;
  const int probes = 64;
  magnitudes.reserve(probes);
  for (int p = 0; p < probes; ++p) {
    const std::vector<int> flips = sample_flips(n, d, gen);
    const double cand = obj.propose(flips);
    obj.reject();
    magnitudes.push_back(std::fabs(cand - base));
  }
  std::sort(magnitudes.begin(), magnitudes.end());
  double scale = magnitudes[probes / 2];
  if (scale <= 0.0) {
    double sum = 0.0;
    for (double m : magnitudes) sum += m;
    scale = sum / probes;
  }
  if (scale <= 0.0) scale = 1.0;
  if (sched.beta_start <= 0.0) sched.beta_start = std::log(2.0) / scale;
  if (sched.beta_end <= 0.0) sched.beta_end = std::log(100.0) / scale;
  if (sched.beta_end < sched.beta_start) sched.beta_end = sched.beta_start;
}

struct BestTracker {
  double fidelity = 2.0;
  double objective = 0.0;
  std::vector<std::int8_t> spins;

  void offer(double fid, double obj, const std::vector<std::int8_t>& cfg) {
    if (fid < fidelity) {
      fidelity = fid;
      spins = cfg;
    }
    if (spins.empty()) spins = cfg;
    objective = std::min(objective, obj);
  }
};

}  // namespace

RunMode run_mode_from_string(const std::string& name) {
  if (name == "fast") return RunMode::fast;
  if (name == "camera") return RunMode::camera;
  if (name == "realtime") return RunMode::realtime;
  throw InvalidArgument("unknown mode '" + name + "' (expected fast|camera|realtime)");
}

double AnnealSchedule::beta_at(int iteration) const {
  if (total_iterations <= 1) return beta_start;
  const double f = static_cast<double>(iteration) / (total_iterations - 1);
  if (shape == Shape::linear) {
    return beta_start + f * (beta_end - beta_start);
  }
  return beta_start * std::pow(beta_end / beta_start, f);
}

int MhParams::flip_count(int n_spins) const {
  if (d > 0) return std::min(d, n_spins);
  return std::max(1, n_spins / 1024);
}

bool metropolis_accept(double delta, double beta, std::mt19937_64& gen) {
  if (delta <= 0.0) return true;
  return rng::uniform01(gen) < std::exp(-beta * delta);
}

std::vector<std::int8_t> random_spins(int n, std::mt19937_64& gen) {
  std::vector<std::int8_t> s(n);
  for (int i = 0; i < n; ++i) s[i] = (gen() & 1u) ? std::int8_t{1} : std::int8_t{-1};
  return s;
}

std::vector<std::int8_t> balanced_spins(int n, std::mt19937_64& gen) {
  std::vector<std::int8_t> s(n);
  for (int i = 0; i < n; ++i) s[i] = (i < (n + 1) / 2) ? std::int8_t{1} : std::int8_t{-1};
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(rng::uniform_index(gen, static_cast<std::uint64_t>(i) + 1));
    std::swap(s[i], s[j]);
  }
  return s;
}

std::vector<std::int8_t> ga_crossover(std::span<const std::int8_t> a,
                                      std::span<const std::int8_t> b, std::mt19937_64& gen) {
  std::vector<std::int8_t> child(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    child[i] = (rng::uniform01(gen) < 0.5) ? a[i] : b[i];
  }
  return child;
}

int ga_mutate(std::span<std::int8_t> genes, double rate, std::mt19937_64& gen) {
  int flipped = 0;
  for (auto& g : genes) {
    if (rng::uniform01(gen) < rate) {
      g = static_cast<std::int8_t>(-g);
      ++flipped;
    }
  }
  return flipped;
}

// ---------------------------------------------------------------------------
// FastMattisObjective

FastMattisObjective::FastMattisObjective(NppInstance inst, std::vector<std::int8_t> initial,
                                         AdiabaticSchedule sched, bool adiabatic,
                                         noise::SimClock* clock)
    : inst_(std::move(inst)),
      sched_(sched),
      adiabatic_(adiabatic),
      sigma_(std::move(initial)),
      clock_(clock) {
  if (sigma_.size() != inst_.zeta.size()) {
    throw DimensionError("initial configuration size does not match the instance");
  }
  sum_zeta_ = inst_.sum_zeta();
  amp_ = adiabatic_ ? effective_amplitudes(inst_, sched_, 0) : inst_.zeta;
  refresh_sums();
  tick();  // initial evaluation
}

void FastMattisObjective::tick() {
  ++evals_;
  if (clock_ != nullptr) clock_->advance(noise::kIterationCycleMs);
}

void FastMattisObjective::refresh_sums() {
  long double me = 0.0L;
  long double mt = 0.0L;
  for (std::size_t j = 0; j < sigma_.size(); ++j) {
    me += static_cast<long double>(sigma_[j]) * amp_[j];
    mt += static_cast<long double>(sigma_[j]) * inst_.zeta[j];
  }
  m_eff_ = me;
  m_true_ = mt;
}

double FastMattisObjective::value() const {
  return static_cast<double>(m_eff_ * m_eff_);
}

double FastMattisObjective::propose(std::span<const int> flips) {
  pending_.assign(flips.begin(), flips.end());
  long double me = m_eff_;
  long double mt = m_true_;
  for (int f : flips) {
    me -= 2.0L * sigma_[f] * amp_[f];
    mt -= 2.0L * sigma_[f] * inst_.zeta[f];
  }
  pending_m_eff_ = me;
  pending_m_true_ = mt;
  tick();
  return static_cast<double>(me * me);
}

void FastMattisObjective::accept() {
  for (int f : pending_) sigma_[f] = static_cast<std::int8_t>(-sigma_[f]);
  m_eff_ = pending_m_eff_;
  m_true_ = pending_m_true_;
  pending_.clear();
}

void FastMattisObjective::reject() { pending_.clear(); }

double FastMattisObjective::state_fidelity() const {
  return static_cast<double>(std::fabs(static_cast<double>(m_true_))) / sum_zeta_;
}

double FastMattisObjective::config_fidelity(std::span<const std::int8_t> genes) const {
  return fidelity(inst_, genes);
}

void FastMattisObjective::advance_stage(int t) {
  if (!adiabatic_) return;
  amp_ = effective_amplitudes(inst_, sched_, t);
  long double me = 0.0L;
  for (std::size_t j = 0; j < sigma_.size(); ++j) {
    me += static_cast<long double>(sigma_[j]) * amp_[j];
  }
  m_eff_ = me;
}

double FastMattisObjective::evaluate(std::span<const std::int8_t> genes) {
  if (genes.size() != sigma_.size()) throw DimensionError("gene count mismatch");
  sigma_.assign(genes.begin(), genes.end());
  refresh_sums();
  tick();
  return value();
}

// ---------------------------------------------------------------------------
// CameraNppObjective

CameraNppObjective::CameraNppObjective(NppInstance inst, std::vector<std::int8_t> initial,
                                       optics::SlmGeometry geom, AdiabaticSchedule sched,
                                       bool adiabatic, ObjectiveKind kind,
                                       const CameraRunArgs& args)
    : inst_(std::move(inst)),
      sched_(sched),
      adiabatic_(adiabatic),
      kind_(kind),
      geom_(geom),
      sigma_(std::move(initial)),
      bench_(args.camera, args.device_noise, args.oversample, args.clock),
      roi_(args.roi),
      parallel_(args.parallel) {
  if (sigma_.size() != inst_.zeta.size()) {
    throw DimensionError("initial configuration size does not match the instance");
  }
  if (static_cast<int>(sigma_.size()) != geom_.spin_side * geom_.spin_side) {
    throw GeometryError("instance size must equal spin_side^2 for the camera path");
  }
  sum_zeta_ = inst_.sum_zeta();
  long double mt = 0.0L;
  for (std::size_t j = 0; j < sigma_.size(); ++j) {
    mt += static_cast<long double>(sigma_[j]) * inst_.zeta[j];
  }
  m_true_ = mt;

  set_stage_alphas(adiabatic_ ? 0 : sched_.total_steps);
  SpinConfig cfg;
  cfg.side = geom_.spin_side;
  cfg.spins = sigma_;
  frame_ = optics::compose_phase(cfg, stage_alpha_, geom_);

  // Exposure chosen once per problem instance, against the initial frame.
  bench_.calibrate(frame_);
  const int side = frame_.width * args.oversample;
  delta_target_ = optics::TargetIntensity::delta(side, frame_.height * args.oversample,
                                                 bench_.camera().max_count());
  value_ = measure_objective();
}

void CameraNppObjective::set_stage_alphas(int t) {
  stage_alpha_.resize(inst_.alpha.size());
  const double frac =
      (sched_.total_steps > 0) ? static_cast<double>(t) / sched_.total_steps : 1.0;
  for (std::size_t j = 0; j < stage_alpha_.size(); ++j) {
    stage_alpha_[j] = frac * inst_.alpha[j];
  }
}

double CameraNppObjective::measure_objective() {
  const optics::IntensityImage img = bench_.measure(frame_, parallel_);
  if (kind_ == ObjectiveKind::center_roi_intensity) {
    return optics::center_window_sum(img, roi_);
  }
  return optics::cost(img, delta_target_, parallel_);
}

double CameraNppObjective::propose(std::span<const int> flips) {
  pending_.assign(flips.begin(), flips.end());
  long double mt = m_true_;
  for (int f : flips) {
    mt -= 2.0L * sigma_[f] * inst_.zeta[f];
    optics::recompose_spin(frame_, f, static_cast<std::int8_t>(-sigma_[f]), stage_alpha_[f],
                           geom_.quantize_phase);
  }
  pending_m_true_ = mt;
  pending_value_ = measure_objective();
  return pending_value_;
}

void CameraNppObjective::accept() {
  for (int f : pending_) sigma_[f] = static_cast<std::int8_t>(-sigma_[f]);
  m_true_ = pending_m_true_;
  value_ = pending_value_;
  pending_.clear();
}

void CameraNppObjective::reject() {
  for (int f : pending_) {
    optics::recompose_spin(frame_, f, sigma_[f], stage_alpha_[f], geom_.quantize_phase);
  }
  pending_.clear();
}

double CameraNppObjective::state_fidelity() const {
  return std::fabs(static_cast<double>(m_true_)) / sum_zeta_;
}

double CameraNppObjective::config_fidelity(std::span<const std::int8_t> genes) const {
  return fidelity(inst_, genes);
}

void CameraNppObjective::advance_stage(int t) {
  if (!adiabatic_) return;
  set_stage_alphas(t);
  for (std::size_t j = 0; j < sigma_.size(); ++j) {
    optics::recompose_spin(frame_, static_cast<int>(j), sigma_[j], stage_alpha_[j],
                           geom_.quantize_phase);
  }
  value_ = measure_objective();
}

double CameraNppObjective::evaluate(std::span<const std::int8_t> genes) {
  if (genes.size() != sigma_.size()) throw DimensionError("gene count mismatch");
  for (std::size_t j = 0; j < sigma_.size(); ++j) {
    if (genes[j] != sigma_[j]) {
      optics::recompose_spin(frame_, static_cast<int>(j), genes[j], stage_alpha_[j],
                             geom_.quantize_phase);
    }
  }
  sigma_.assign(genes.begin(), genes.end());
  long double mt = 0.0L;
  for (std::size_t j = 0; j < sigma_.size(); ++j) {
    mt += static_cast<long double>(sigma_[j]) * inst_.zeta[j];
  }
  m_true_ = mt;
  value_ = measure_objective();
  return value_;
}

// ---------------------------------------------------------------------------
// CameraPatternObjective

CameraPatternObjective::CameraPatternObjective(const SpinConfig& target_pattern,
                                               std::vector<std::int8_t> initial,
                                               optics::SlmGeometry geom,
                                               const CameraRunArgs& args)
    : geom_(geom),
      sigma_(std::move(initial)),
      bench_(args.camera, args.device_noise, args.oversample, args.clock),
      parallel_(args.parallel) {
  if (sigma_.size() != target_pattern.spins.size()) {
    throw DimensionError("initial configuration size does not match the target pattern");
  }
  if (static_cast<int>(sigma_.size()) != geom_.spin_side * geom_.spin_side) {
    throw GeometryError("pattern size must equal spin_side^2");
  }
  zero_alpha_.assign(sigma_.size(), 0.0);

  const optics::SlmFrame target_frame =
      optics::compose_phase(target_pattern, zero_alpha_, geom_);
  bench_.calibrate(target_frame);
  target_ = optics::TargetIntensity::from_image(bench_.measure(target_frame, parallel_));

  SpinConfig cfg;
  cfg.side = geom_.spin_side;
  cfg.spins = sigma_;
  frame_ = optics::compose_phase(cfg, zero_alpha_, geom_);
  value_ = measure_objective();
}

double CameraPatternObjective::measure_objective() {
  return optics::cost(bench_.measure(frame_, parallel_), target_, parallel_);
}

double CameraPatternObjective::propose(std::span<const int> flips) {
  pending_.assign(flips.begin(), flips.end());
  for (int f : flips) {
    optics::recompose_spin(frame_, f, static_cast<std::int8_t>(-sigma_[f]), 0.0,
                           geom_.quantize_phase);
  }
  pending_value_ = measure_objective();
  return pending_value_;
}

void CameraPatternObjective::accept() {
  for (int f : pending_) sigma_[f] = static_cast<std::int8_t>(-sigma_[f]);
  value_ = pending_value_;
  pending_.clear();
}

void CameraPatternObjective::reject() {
  for (int f : pending_) {
    optics::recompose_spin(frame_, f, sigma_[f], 0.0, geom_.quantize_phase);
  }
  pending_.clear();
}

double CameraPatternObjective::state_fidelity() const {
  long s = 0;
  for (std::int8_t v : sigma_) s += v;
  return std::fabs(static_cast<double>(s)) / static_cast<double>(sigma_.size());
}

double CameraPatternObjective::config_fidelity(std::span<const std::int8_t> genes) const {
  long s = 0;
  for (std::int8_t v : genes) s += v;
  return std::fabs(static_cast<double>(s)) / static_cast<double>(genes.size());
}

double CameraPatternObjective::evaluate(std::span<const std::int8_t> genes) {
  if (genes.size() != sigma_.size()) throw DimensionError("gene count mismatch");
  for (std::size_t j = 0; j < sigma_.size(); ++j) {
    if (genes[j] != sigma_[j]) {
      optics::recompose_spin(frame_, static_cast<int>(j), genes[j], 0.0,
                             geom_.quantize_phase);
    }
  }
  sigma_.assign(genes.begin(), genes.end());
  value_ = measure_objective();
  return value_;
}

// ---------------------------------------------------------------------------
// Drivers

namespace {

RunTrace run_metropolis(SpinObjective& obj, AnnealSchedule sched, const MhParams& params,
                        const AdiabaticSchedule* stages) {
  const auto start = Clock::now();
  std::mt19937_64 gen(params.seed);
  const int n = obj.spin_count();
  const int d = params.flip_count(n);

  int t_step = 0;
  if (stages != nullptr) {
    obj.advance_stage(0);
  }
  calibrate_schedule(sched, obj, params, gen);
  if (!(sched.beta_start > 0.0) || sched.beta_end < sched.beta_start) {
    throw InvalidArgument("anneal schedule needs beta_end >= beta_start > 0");
  }

  RunTrace trace;
  trace.rows.reserve(static_cast<std::size_t>(sched.total_iterations) + 1);
  BestTracker best;
  best.objective = obj.value();

  double energy = obj.value();
  const auto record = [&](long iter, double beta, bool acc) {
    const double fid = obj.state_fidelity();
    best.offer(fid, energy, obj.spins());
    const double sim = obj.sim_clock() != nullptr ? obj.sim_clock()->sim_ms : 0.0;
    trace.rows.push_back(TraceRow{iter, t_step, beta, energy, fid, acc, sim});
  };
  record(0, sched.beta_at(0), false);

  for (int i = 1; i <= sched.total_iterations; ++i) {
    if (stages != nullptr) {
      const int want = std::min(stages->total_steps,
                                (i - 1) / std::max(1, stages->settle_iterations));
      if (want != t_step) {
        t_step = want;
        obj.advance_stage(t_step);
        energy = obj.value();
      }
    }
    const double beta = sched.beta_at(i - 1);
    const std::vector<int> flips = sample_flips(n, d, gen);
    const double candidate = obj.propose(flips);
    const bool acc = metropolis_accept(candidate - energy, beta, gen);
    if (acc) {
      obj.accept();
      energy = candidate;
      ++trace.accepted_count;
    } else {
      obj.reject();
      ++trace.rejected_count;
    }
    record(i, beta, acc);
  }

  trace.best_spins = best.spins;
  trace.best_fidelity = best.fidelity;
  trace.best_objective = best.objective;
  trace.evaluations = obj.evaluations();
  trace.sim_time_ms = obj.sim_clock() != nullptr ? obj.sim_clock()->sim_ms : 0.0;
  trace.wall_time_ms = elapsed_ms(start);
  return trace;
}

}  // namespace

RunTrace anneal(SpinObjective& obj, AnnealSchedule sched, const MhParams& params) {
  return run_metropolis(obj, sched, params, nullptr);
}

RunTrace ga_evolve(SpinObjective& obj, const GaParams& params, int generations) {
  if (params.population < 2) throw InvalidArgument("GA population must be >= 2");
  if (params.mutation_rate < 0.0 || params.mutation_rate > 1.0) {
    throw InvalidArgument("mutation_rate must be in [0, 1]");
  }
  const auto start = Clock::now();
  std::mt19937_64 gen(params.seed);
  const int n = obj.spin_count();
  const int pop = params.population;
  const int elite = std::clamp(params.elitism, 0, pop - 1);

  std::vector<std::vector<std::int8_t>> individuals(pop);
  std::vector<double> fitness(pop);
  for (int i = 0; i < pop; ++i) {
    individuals[i] = random_spins(n, gen);
    fitness[i] = obj.evaluate(individuals[i]);
  }

  RunTrace trace;
  BestTracker best;
  best.objective = *std::min_element(fitness.begin(), fitness.end());

  const auto order_by_fitness = [&](std::vector<int>& idx) {
    idx.resize(pop);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return fitness[a] < fitness[b]; });
  };

  std::vector<int> idx;
  const auto record = [&](long generation) {
    order_by_fitness(idx);
    const int b = idx.front();
    const double fid = obj.config_fidelity(individuals[b]);
    best.offer(fid, fitness[b], individuals[b]);
    const double sim = obj.sim_clock() != nullptr ? obj.sim_clock()->sim_ms : 0.0;
    trace.rows.push_back(TraceRow{generation, 0, 0.0, fitness[b], fid, true, sim});
  };
  record(0);

  // Fitness-proportional parent pick over (worst - f); uniform when flat.
  const auto pick_parent = [&](double worst, double range) -> int {
    if (range <= 0.0) {
      return static_cast<int>(rng::uniform_index(gen, static_cast<std::uint64_t>(pop)));
    }
    std::vector<double> w(pop);
    double total = 0.0;
    for (int i = 0; i < pop; ++i) {
      w[i] = (worst - fitness[i]) + 0.1 * range;
      total += w[i];
    }
    double u = rng::uniform01(gen) * total;
    for (int i = 0; i < pop; ++i) {
      u -= w[i];
      if (u <= 0.0) return i;
    }
    return pop - 1;
  };

  for (int g = 1; g <= generations; ++g) {
    if (params.max_evaluations > 0 &&
        obj.evaluations() + (pop - elite) > params.max_evaluations) {
      break;
    }
    order_by_fitness(idx);
    const double best_fit = fitness[idx.front()];
    const double worst_fit = fitness[idx.back()];
    const double range = worst_fit - best_fit;

    std::vector<std::vector<std::int8_t>> next(pop);
    std::vector<double> next_fit(pop);
    for (int e = 0; e < elite; ++e) {
      next[e] = individuals[idx[e]];
      next_fit[e] = fitness[idx[e]];  // carried over without re-evaluation
    }
    for (int i = elite; i < pop; ++i) {
      const int pa = pick_parent(worst_fit, range);
      const int pb = pick_parent(worst_fit, range);
      std::vector<std::int8_t> child = ga_crossover(individuals[pa], individuals[pb], gen);
      ga_mutate(child, params.mutation_rate, gen);
      next_fit[i] = obj.evaluate(child);
      next[i] = std::move(child);
    }
    individuals = std::move(next);
    fitness = std::move(next_fit);
    record(g);
  }

  trace.best_spins = best.spins;
  trace.best_fidelity = best.fidelity;
  trace.best_objective = best.objective;
  trace.evaluations = obj.evaluations();
  trace.sim_time_ms = obj.sim_clock() != nullptr ? obj.sim_clock()->sim_ms : 0.0;
  trace.wall_time_ms = elapsed_ms(start);
  return trace;
}

RunTrace adiabatic_solve(const NppInstance& inst, AdiabaticSchedule sched,
                         AnnealSchedule anneal_sched, MhParams params,
                         const SolveOptions& options) {
  if (sched.total_steps < 1) throw ScheduleError("total_steps must be >= 1");
  if (sched.settle_iterations < 1) throw ScheduleError("settle_iterations must be >= 1");
  const int n = inst.size();

  std::mt19937_64 init_gen(rng::mix64(params.seed ^ 0x5b1cebab5ull));
  std::vector<std::int8_t> initial = balanced_spins(n, init_gen);

  if (anneal_sched.total_iterations <= 0) {
    // Stages t = 0..K each settle for settle_iterations; no extra tail.
    anneal_sched.total_iterations = (sched.total_steps + 1) * sched.settle_iterations;
  }

  std::unique_ptr<SpinObjective> obj;
  if (options.mode == RunMode::fast) {
    obj = std::make_unique<FastMattisObjective>(inst, std::move(initial), sched, true,
                                                options.clock);
  } else {
    CameraRunArgs args = options.camera;
    args.clock = options.clock != nullptr ? options.clock : args.clock;
    obj = std::make_unique<CameraNppObjective>(inst, std::move(initial), options.geom, sched,
                                               true, params.objective, args);
  }
  RunTrace trace = run_metropolis(*obj, anneal_sched, params, &sched);
  if (options.clock != nullptr) trace.sim_time_ms = options.clock->sim_ms;
  return trace;
}

CheckerboardResult checkerboard_mh(const optics::SlmGeometry& geom, AnnealSchedule sched,
                                   MhParams params, const CameraRunArgs& args) {
  std::mt19937_64 init_gen(rng::mix64(params.seed ^ 0xc0ffeeull));
  const int n = geom.spin_side * geom.spin_side;
  CameraPatternObjective obj(SpinConfig::checkerboard(geom.spin_side),
                             random_spins(n, init_gen), geom, args);
  params.objective = ObjectiveKind::full_image_cost;

  CheckerboardResult result;
  result.trace = anneal(obj, sched, params);
  result.initial_cost = result.trace.rows.front().objective;
  result.final_cost = result.trace.rows.back().objective;
  result.ratio = result.initial_cost > 0.0 ? result.final_cost / result.initial_cost
                                           : (result.final_cost > 0.0 ? 1.0 : 0.0);
  if (args.clock != nullptr) result.trace.sim_time_ms = args.clock->sim_ms;
  return result;
}

CheckerboardResult checkerboard_ga(const optics::SlmGeometry& geom, GaParams params,
                                   long eval_budget, const CameraRunArgs& args) {
  std::mt19937_64 init_gen(rng::mix64(params.seed ^ 0xc0ffeeull));
  const int n = geom.spin_side * geom.spin_side;
  CameraPatternObjective obj(SpinConfig::checkerboard(geom.spin_side),
                             random_spins(n, init_gen), geom, args);
  if (eval_budget > 0) params.max_evaluations = eval_budget;
  const int generations =
      eval_budget > 0
          ? static_cast<int>(eval_budget / std::max(1, params.population - params.elitism)) + 1
          : 800;

  CheckerboardResult result;
  result.trace = ga_evolve(obj, params, generations);
  result.initial_cost = result.trace.rows.front().objective;
  result.final_cost = result.trace.rows.back().objective;
  result.ratio = result.initial_cost > 0.0 ? result.final_cost / result.initial_cost
                                           : (result.final_cost > 0.0 ? 1.0 : 0.0);
  if (args.clock != nullptr) result.trace.sim_time_ms = args.clock->sim_ms;
  return result;
}

}  // namespace spim::solve
