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

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "litsim/dynamics.hpp"

namespace litsim {

/// One-step POVM of the quantum-jump unravelling:
///   J_0 = 1 - i H dt - (dt/2) sum L^dag L,   J_mu = sqrt(dt) L_mu.
struct KrausSet {
  ComplexMatrix j0;
  std::vector<ComplexMatrix> jumps;
  double dt;

  /// ||J_0^dag J_0 + sum J_mu^dag J_mu - 1||_max.
  double completeness_defect() const;
};

/// Largest allowed dt * ||sum L^dag L||.
inline constexpr double kMaxJumpProbabilityPerStep = 1e-2;

KrausSet kraus_set(const Strategy& s, double dt);

/// Exact bound on the completeness defect: J_0^dag J_0 + sum J^dag J - 1 =
/// dt^2 A^dag A with A = iH + K/2, so the defect is at most
/// dt^2 (||H|| + ||K||/2)^2 (spectral norms).
double completeness_bound(const Strategy& s, double dt);

struct StepResult {
  PureState state;
  int outcome;  // 0 = no jump, mu >= 1 = channel mu
};

/// Draws outcome i with probability p_i / sum p, p_i = ||J_i psi||^2, by
/// cumulative inversion of `draw` in [0, 1); applies J_i and renormalizes.
StepResult trajectory_step(const PureState& state, const KrausSet& k, double draw);

/// Per-trajectory random stream: trajectory k of an ensemble uses
/// stream_seed(base, k) = base ^ k, scrambled through SplitMix64 before
/// seeding a 64-bit Mersenne Twister.
class TrajectoryRng {
 public:
  explicit TrajectoryRng(std::uint64_t seed);
  static std::uint64_t stream_seed(std::uint64_t base_seed, std::uint64_t k) {
    return base_seed ^ k;
  }
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
};

struct JumpEvent {
  double t;  // end of the step in which the jump fired
  int channel;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<PureState> states;
  /// outcomes[k]: outcome of the step that ended at times[k] (0 for the
  /// initial point).
  std::vector<int> outcomes;
  /// Every jump, including those between recorded points.
  std::vector<JumpEvent> jumps;
  std::uint64_t seed = 0;

  friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&);
};

/// Records every `record_stride`-th grid point plus the final one.
TrajectoryRecord run_trajectory(const Strategy& s, const PureState& psi0,
                                const TimeGrid& grid, std::uint64_t seed,
                                std::size_t record_stride = 1);
/// Time-dependent variant: the Kraus set is rebuilt from the schedule at the
/// start of every step.
TrajectoryRecord run_trajectory(const StrategySchedule& schedule,
                                const PureState& psi0, const TimeGrid& grid,
                                std::uint64_t seed, std::size_t record_stride = 1);

/// Mean of |psi(t)><psi(t)| over congruent records.
std::vector<StateSample> ensemble_average(std::span<const TrajectoryRecord> records);

/// Picks an eigenvector of rho0 with probability equal to its eigenvalue.
PureState sample_initial_state(const DensityMatrix& rho0, double draw);

struct EnsembleOptions {
  std::size_t count = 0;
  std::uint64_t base_seed = 0;
  std::size_t record_stride = 1;
  /// 0 = hardware concurrency.
  std::size_t threads = 0;
  /// Number of leading records (trajectory index order) returned in full.
  std::size_t keep_records = 0;
};

struct EnsembleResult {
  std::vector<StateSample> average;
  std::vector<TrajectoryRecord> kept;
  std::vector<std::size_t> jump_counts;  // per trajectory
};

/// Runs `count` independent trajectories, starting each from an eigenstate
/// of rho0 sampled with the trajectory's own stream, and reduces them in a
/// fixed order so the result is independent of the thread count.
EnsembleResult run_ensemble(const StrategySchedule& schedule,
                            const DensityMatrix& rho0, const TimeGrid& grid,
                            const EnsembleOptions& options);

}  // namespace litsim
