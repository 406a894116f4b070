// Copyright 2026 The litsim Authors
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

#include "litsim/trajectories.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <thread>

namespace litsim {

namespace {

constexpr double kDeadStateThreshold = 1e-30;

ComplexMatrix jump_rate_sum(const Strategy& s) {
  ComplexMatrix k(s.dim());
  for (const auto& l : s.lindblad_ops()) k += dagger(l) * l;
  return k;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Applies one POVM step to psi in place. Buffers are reused across steps.
class Stepper {
 public:
  explicit Stepper(std::size_t dim) : dim_(dim) {}

  int step(std::vector<Complex>& psi, const KrausSet& k, double draw) {
    const std::size_t outcomes = k.jumps.size() + 1;
    if (candidates_.size() != outcomes) {
      candidates_.assign(outcomes, std::vector<Complex>(dim_));
      probs_.assign(outcomes, 0.0);
    }
    const double total = dim_ == 2 ? apply_qubit(psi, k) : apply(psi, k);
    if (!(total > kDeadStateThreshold)) {
      throw NumericalError("trajectory_step: all outcome probabilities vanish");
    }
    return select(psi, draw * total);
  }

 private:
  // Unrolled 2x2 case; the generic loops cost several times more per step.
  double apply_qubit(const std::vector<Complex>& psi, const KrausSet& k) {
    const double x0r = psi[0].real();
    const double x0i = psi[0].imag();
    const double x1r = psi[1].real();
    const double x1i = psi[1].imag();
    double total = 0.0;
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      const ComplexMatrix& j = i == 0 ? k.j0 : k.jumps[i - 1];
      const double* m = reinterpret_cast<const double*>(j.entries().data());
      const double r0 = (m[0] * x0r - m[1] * x0i) + (m[2] * x1r - m[3] * x1i);
      const double i0 = (m[0] * x0i + m[1] * x0r) + (m[2] * x1i + m[3] * x1r);
      const double r1 = (m[4] * x0r - m[5] * x0i) + (m[6] * x1r - m[7] * x1i);
      const double i1 = (m[4] * x0i + m[5] * x0r) + (m[6] * x1i + m[7] * x1r);
      candidates_[i][0] = {r0, i0};
      candidates_[i][1] = {r1, i1};
      probs_[i] = (r0 * r0 + i0 * i0) + (r1 * r1 + i1 * i1);
      total += probs_[i];
    }
    return total;
  }

  double apply(const std::vector<Complex>& psi, const KrausSet& k) {
    double total = 0.0;
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      const ComplexMatrix& j = i == 0 ? k.j0 : k.jumps[i - 1];
      auto& out = candidates_[i];
      const auto e = j.entries();
      double p = 0.0;
      for (std::size_t r = 0; r < dim_; ++r) {
        // Plain real arithmetic: std::complex multiplication carries inf/nan
        // recovery that costs more than the rest of the step.
        double re = 0.0;
        double im = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) {
          const Complex a = e[r * dim_ + c];
          const Complex b = psi[c];
          re += a.real() * b.real() - a.imag() * b.imag();
          im += a.real() * b.imag() + a.imag() * b.real();
        }
        out[r] = {re, im};
        p += re * re + im * im;
      }
      probs_[i] = p;
      total += p;
    }
    return total;
  }

  int select(std::vector<Complex>& psi, double target) {
    const std::size_t outcomes = probs_.size();
    std::size_t chosen = outcomes;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < outcomes; ++i) {
      cumulative += probs_[i];
      if (target < cumulative) {
        chosen = i;
        break;
      }
    }
    if (chosen == outcomes) {
      // rounding at the top of the cumulative sum
      for (std::size_t i = outcomes; i-- > 0;) {
        if (probs_[i] > 0.0) {
          chosen = i;
          break;
        }
      }
    }
    const double norm = std::sqrt(probs_[chosen]);
    const double inv = 1.0 / norm;
    for (std::size_t r = 0; r < dim_; ++r) psi[r] = candidates_[chosen][r] * inv;
    return static_cast<int>(chosen);
  }

  std::size_t dim_;
  std::vector<std::vector<Complex>> candidates_;
  std::vector<double> probs_;
};

// Every step but the last has the nominal length. Differences of grid points
// wander in the last bits, which would defeat the Kraus-set caching.
double step_length(const TimeGrid& grid, const std::vector<double>& pts, std::size_t k) {
  return k + 2 < pts.size() ? grid.dt : pts[k + 1] - pts[k];
}

template <typename KrausAt>
TrajectoryRecord simulate(KrausAt&& kraus_at, const PureState& psi0,
                          const TimeGrid& grid, TrajectoryRng& rng,
                          std::uint64_t seed, std::size_t record_stride) {
  grid.validate();
  if (record_stride == 0) throw ValidationError("run_trajectory: record_stride must be >= 1");
  const auto pts = grid.points();
  const std::size_t steps = pts.size() - 1;

  TrajectoryRecord rec;
  rec.seed = seed;
  const std::size_t expected = steps / record_stride + 2;
  rec.times.reserve(expected);
  rec.states.reserve(expected);
  rec.outcomes.reserve(expected);
  rec.times.push_back(pts.front());
  rec.states.push_back(psi0);
  rec.outcomes.push_back(0);

  std::vector<Complex> psi(psi0.amplitudes().begin(), psi0.amplitudes().end());
  Stepper stepper(psi.size());
  for (std::size_t k = 0; k < steps; ++k) {
    const KrausSet& kraus = kraus_at(pts[k], step_length(grid, pts, k));
    if (kraus.j0.dim() != psi.size()) {
      throw DimensionError("run_trajectory: state does not match strategy");
    }
    const int outcome = stepper.step(psi, kraus, rng.uniform());
    if (outcome != 0) rec.jumps.push_back({pts[k + 1], outcome});
    if ((k + 1) % record_stride == 0 || k + 1 == steps) {
      rec.times.push_back(pts[k + 1]);
      rec.states.push_back(PureState::normalized(psi));
      rec.outcomes.push_back(outcome);
    }
  }
  return rec;
}

// Static strategies reuse one Kraus set per distinct step length (only the
// final step of a grid can differ).
class StaticKraus {
 public:
  explicit StaticKraus(const Strategy& s) : s_(s) {}
  const KrausSet& operator()(double, double dt) {
    if (!cached_ || cached_->dt != dt) cached_ = kraus_set(s_, dt);
    return *cached_;
  }

 private:
  const Strategy& s_;
  std::optional<KrausSet> cached_;
};

class ScheduledKraus {
 public:
  explicit ScheduledKraus(const StrategySchedule& s) : s_(s) {}
  const KrausSet& operator()(double t, double dt) {
    current_ = kraus_set(s_.at(t), dt);
    return *current_;
  }

 private:
  const StrategySchedule& s_;
  std::optional<KrausSet> current_;
};

// Walks a table of per-step Kraus sets built once for a whole ensemble.
class TableKraus {
 public:
  explicit TableKraus(const std::vector<KrausSet>& sets) : sets_(sets) {}
  const KrausSet& operator()(double, double) { return sets_[next_++]; }

 private:
  const std::vector<KrausSet>& sets_;
  std::size_t next_ = 0;
};

std::vector<KrausSet> kraus_table(const StrategySchedule& s, const TimeGrid& grid) {
  const auto pts = grid.points();
  std::vector<KrausSet> sets;
  sets.reserve(pts.size() - 1);
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    sets.push_back(kraus_set(s.at(pts[k]), step_length(grid, pts, k)));
  }
  return sets;
}

// Above this many steps the table is not worth its memory.
constexpr std::size_t kMaxTableSteps = 1u << 20;

TrajectoryRecord simulate_schedule(const StrategySchedule& schedule,
                                   const PureState& psi0, const TimeGrid& grid,
                                   TrajectoryRng& rng, std::uint64_t seed,
                                   std::size_t record_stride) {
  if (schedule.is_static()) {
    const Strategy s = schedule.at(grid.t0);
    return simulate(StaticKraus(s), psi0, grid, rng, seed, record_stride);
  }
  return simulate(ScheduledKraus(schedule), psi0, grid, rng, seed, record_stride);
}

}  // namespace

double KrausSet::completeness_defect() const {
  ComplexMatrix sum = dagger(j0) * j0;
  for (const auto& j : jumps) sum += dagger(j) * j;
  return max_norm_diff(sum, ComplexMatrix::identity(j0.dim()));
}

KrausSet kraus_set(const Strategy& s, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("kraus_set: dt must be positive");
  }
  const ComplexMatrix k = jump_rate_sum(s);
  const double rate = spectral_norm(HermitianOperator(k));
  if (dt * rate > kMaxJumpProbabilityPerStep) {
    throw ValidationError("kraus_set: dt * ||sum L^dag L|| = " +
                          std::to_string(dt * rate) + " exceeds 1e-2 (dt too large)");
  }
  const std::size_t d = s.dim();
  ComplexMatrix j0 = ComplexMatrix::identity(d);
  j0 -= s.hamiltonian().matrix() * Complex(0.0, dt);
  j0 -= k * Complex(0.5 * dt);
  std::vector<ComplexMatrix> jumps;
  jumps.reserve(s.channel_count());
  for (const auto& l : s.lindblad_ops()) jumps.push_back(l * Complex(std::sqrt(dt)));
  return {std::move(j0), std::move(jumps), dt};
}

double completeness_bound(const Strategy& s, double dt) {
  const double h = spectral_norm(s.hamiltonian());
  const double k = spectral_norm(HermitianOperator(jump_rate_sum(s)));
  return dt * dt * (h + 0.5 * k) * (h + 0.5 * k);
}

StepResult trajectory_step(const PureState& state, const KrausSet& k, double draw) {
  if (state.dim() != k.j0.dim()) {
    throw DimensionError("trajectory_step: state does not match Kraus set");
  }
  if (!(draw >= 0.0 && draw < 1.0)) {
    throw ValidationError("trajectory_step: draw must lie in [0, 1)");
  }
  std::vector<Complex> psi(state.amplitudes().begin(), state.amplitudes().end());
  Stepper stepper(psi.size());
  const int outcome = stepper.step(psi, k, draw);
  return {PureState::normalized(std::move(psi)), outcome};
}

TrajectoryRng::TrajectoryRng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

double TrajectoryRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

bool operator==(const TrajectoryRecord& a, const TrajectoryRecord& b) {
  if (a.seed != b.seed || a.times != b.times || a.states != b.states ||
      a.outcomes != b.outcomes || a.jumps.size() != b.jumps.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.jumps.size(); ++i) {
    if (a.jumps[i].t != b.jumps[i].t || a.jumps[i].channel != b.jumps[i].channel) {
      return false;
    }
  }
  return true;
}

TrajectoryRecord run_trajectory(const Strategy& s, const PureState& psi0,
                                const TimeGrid& grid, std::uint64_t seed,
                                std::size_t record_stride) {
  TrajectoryRng rng(seed);
  return simulate(StaticKraus(s), psi0, grid, rng, seed, record_stride);
}

TrajectoryRecord run_trajectory(const StrategySchedule& schedule,
                                const PureState& psi0, const TimeGrid& grid,
                                std::uint64_t seed, std::size_t record_stride) {
  TrajectoryRng rng(seed);
  return simulate_schedule(schedule, psi0, grid, rng, seed, record_stride);
}

std::vector<StateSample> ensemble_average(std::span<const TrajectoryRecord> records) {
  if (records.empty()) throw ValidationError("ensemble_average: empty ensemble");
  const auto& times = records.front().times;
  const std::size_t d = records.front().states.front().dim();
  std::vector<ComplexMatrix> sums(times.size(), ComplexMatrix(d));
  for (const auto& rec : records) {
    if (rec.times != times) {
      throw ValidationError("ensemble_average: records are on different grids");
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (rec.states[k].dim() != d) {
        throw DimensionError("ensemble_average: state dimensions differ");
      }
      sums[k] += rec.states[k].projector();
    }
  }
  std::vector<StateSample> out;
  out.reserve(times.size());
  const Complex inv = 1.0 / static_cast<double>(records.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    out.push_back({times[k], DensityMatrix(sums[k] * inv)});
  }
  return out;
}

PureState sample_initial_state(const DensityMatrix& rho0, double draw) {
  ComplexMatrix herm = rho0.matrix();
  for (std::size_t i = 0; i < herm.dim(); ++i) {
    herm(i, i) = herm(i, i).real();
    for (std::size_t j = i + 1; j < herm.dim(); ++j) herm(j, i) = std::conj(herm(i, j));
  }
  const auto eig = hermitian_eigensystem(HermitianOperator(std::move(herm)));
  std::vector<double> w(eig.values.size());
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = std::max(0.0, eig.values[i]);
    total += w[i];
  }
  // Largest eigenvalue first so a pure rho0 maps to its own state for any draw
  // short of rounding.
  const double target = draw * total;
  double cumulative = 0.0;
  std::size_t chosen = w.size() - 1;
  for (std::size_t i = w.size(); i-- > 0;) {
    cumulative += w[i];
    if (target < cumulative) {
      chosen = i;
      break;
    }
  }
  return PureState::normalized(eig.vector(chosen));
}

EnsembleResult run_ensemble(const StrategySchedule& schedule,
                            const DensityMatrix& rho0, const TimeGrid& grid,
                            const EnsembleOptions& options) {
  if (options.count == 0) throw ValidationError("run_ensemble: empty ensemble");
  grid.validate();
  const std::size_t n = options.count;
  const std::size_t chunk = std::max<std::size_t>(64, (n + 63) / 64);
  const std::size_t chunks = (n + chunk - 1) / chunk;
  const std::size_t d = rho0.dim();

  struct ChunkResult {
    std::vector<double> times;
    std::vector<ComplexMatrix> sums;
    std::vector<TrajectoryRecord> kept;
  };
  std::vector<ChunkResult> results(chunks);
  std::vector<std::size_t> jump_counts(n);

  std::optional<std::vector<KrausSet>> table;
  if (!schedule.is_static() && grid.step_count() <= kMaxTableSteps) {
    table = kraus_table(schedule, grid);
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};

  auto worker = [&] {
    try {
      for (std::size_t c = next++; c < chunks && !failed; c = next++) {
        ChunkResult& res = results[c];
        const std::size_t begin = c * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        for (std::size_t k = begin; k < end; ++k) {
          const std::uint64_t seed = TrajectoryRng::stream_seed(options.base_seed, k);
          TrajectoryRng rng(seed);
          const PureState psi0 = sample_initial_state(rho0, rng.uniform());
          TrajectoryRecord rec =
              table ? simulate(TableKraus(*table), psi0, grid, rng, seed, options.record_stride)
                    : simulate_schedule(schedule, psi0, grid, rng, seed, options.record_stride);
          if (res.sums.empty()) {
            res.times = rec.times;
            res.sums.assign(rec.times.size(), ComplexMatrix(d));
          }
          for (std::size_t i = 0; i < rec.states.size(); ++i) {
            res.sums[i] += rec.states[i].projector();
          }
          jump_counts[k] = rec.jumps.size();
          if (k < options.keep_records) res.kept.push_back(std::move(rec));
        }
      }
    } catch (...) {
      if (!failed.exchange(true)) failure = std::current_exception();
    }
  };

  std::size_t threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, chunks);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  EnsembleResult out;
  const auto& times = results.front().times;
  std::vector<ComplexMatrix> total(times.size(), ComplexMatrix(d));
  for (auto& res : results) {
    for (std::size_t i = 0; i < times.size(); ++i) total[i] += res.sums[i];
    for (auto& rec : res.kept) out.kept.push_back(std::move(rec));
  }
  const Complex inv = 1.0 / static_cast<double>(n);
  out.average.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    out.average.push_back({times[i], DensityMatrix(total[i] * inv)});
  }
  out.jump_counts = std::move(jump_counts);
  return out;
}

}  // namespace litsim
