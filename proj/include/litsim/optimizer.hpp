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

#include <vector>

#include "litsim/observables.hpp"

namespace litsim {

enum class ObjectiveKind {
  kInstantaneousFlux,     // P'(t)
  kIntegratedFlux,        // trapezoid of P' over [t_begin, t_end]
  kFinalInternalEnergy,   // Tr(H'(T) rho(T))
  kAsymptoticErgotropy,   // E[H', rho_as] at alpha(t_max)
  kFinalExcitedPopulation // rho_ee(T); a function of rho only, LIT invariant
};

enum class Sense { kMaximize, kMinimize };

/// Times are snapped to the nearest point of the evaluation grid.
struct Objective {
  ObjectiveKind kind = ObjectiveKind::kFinalInternalEnergy;
  Sense sense = Sense::kMaximize;
  double t = 0.0;        // instantaneous / final times
  double t_begin = 0.0;  // integrated flux
  double t_end = 0.0;

  static Objective instantaneous_flux(double t, Sense s = Sense::kMaximize);
  static Objective integrated_flux(double t0, double t1, Sense s = Sense::kMaximize);
  static Objective final_internal_energy(double t, Sense s = Sense::kMaximize);
  static Objective asymptotic_ergotropy(Sense s = Sense::kMaximize);
  static Objective final_excited_population(double t, Sense s = Sense::kMaximize);

  void validate(const TimeGrid& grid) const;
  /// True if a is preferable to b under this objective's sense.
  bool better(double a, double b) const;
};

struct SearchSpace {
  std::vector<double> alpha_mag;
  std::vector<double> theta0;
  std::vector<double> theta_rate;

  void validate() const;
  std::size_t size() const {
    return alpha_mag.size() * theta0.size() * theta_rate.size();
  }
};

/// rho(t) under the base thermal strategy on a grid, together with
/// drho/dt at every point. Both are the same for every LIT of the base
/// strategy, so one cache serves a whole search.
class EvolutionCache {
 public:
  EvolutionCache(const QubitThermalModel& model, const DensityMatrix& rho0,
                 const TimeGrid& grid);

  const QubitThermalModel& model() const { return model_; }
  const Strategy& base() const { return base_; }
  const TimeGrid& grid() const { return grid_; }
  const std::vector<StateSample>& states() const { return states_; }
  const std::vector<ComplexMatrix>& rates() const { return rates_; }

 private:
  QubitThermalModel model_;
  Strategy base_;
  TimeGrid grid_;
  std::vector<StateSample> states_;
  std::vector<ComplexMatrix> rates_;
};

/// Energy flux of the LIT-transformed strategy at grid index k, using the
/// cached rho and drho/dt.
double transformed_flux_at(const EvolutionCache& cache, const LITSchedule& lit,
                           std::size_t k);
/// Tr(H'(t_k) rho(t_k)).
double transformed_energy_at(const EvolutionCache& cache, const LITSchedule& lit,
                             std::size_t k);

double evaluate_objective(const Objective& obj, const QubitLITParams& q,
                          const EvolutionCache& cache);
/// Evolves rho once and evaluates.
double evaluate_objective(const Objective& obj, const QubitLITParams& q,
                          const QubitThermalModel& m, const DensityMatrix& rho0,
                          const TimeGrid& grid);

struct SearchRow {
  QubitLITParams params;
  double objective;
  bool is_best;
};

struct SearchResult {
  QubitLITParams best;
  double best_value;
  std::vector<SearchRow> table;  // alpha_mag outermost, theta0 innermost
};

/// Exhaustive search. Equal objective values are resolved towards the
/// lexicographically smallest (alpha_mag, theta_rate, theta0).
SearchResult grid_search(const Objective& obj, const SearchSpace& space,
                         const EvolutionCache& cache, std::size_t threads = 0);
SearchResult grid_search(const Objective& obj, const SearchSpace& space,
                         const QubitThermalModel& m, const DensityMatrix& rho0,
                         const TimeGrid& grid, std::size_t threads = 0);

/// theta0 in [0, 2 pi) maximizing the qubit flux correction at time t for a
/// state rho(t):
///   theta0 = -theta_rate t - arg(i (omega + theta_rate) - (gamma_+ + gamma_-)/2) - arg(rho_ge).
/// Throws when rho_ge = 0, where every phase gives the same flux.
double optimal_phase_instantaneous(const DensityMatrix& rho, const QubitThermalModel& m,
                                   double theta_rate, double t);

}  // namespace litsim
