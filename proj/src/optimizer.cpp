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

#include "litsim/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>
#include <tuple>

namespace litsim {

Objective Objective::instantaneous_flux(double t, Sense s) {
  return {ObjectiveKind::kInstantaneousFlux, s, t, 0.0, 0.0};
}
Objective Objective::integrated_flux(double t0, double t1, Sense s) {
  return {ObjectiveKind::kIntegratedFlux, s, 0.0, t0, t1};
}
Objective Objective::final_internal_energy(double t, Sense s) {
  return {ObjectiveKind::kFinalInternalEnergy, s, t, 0.0, 0.0};
}
Objective Objective::asymptotic_ergotropy(Sense s) {
  return {ObjectiveKind::kAsymptoticErgotropy, s, 0.0, 0.0, 0.0};
}
Objective Objective::final_excited_population(double t, Sense s) {
  return {ObjectiveKind::kFinalExcitedPopulation, s, t, 0.0, 0.0};
}

void Objective::validate(const TimeGrid& grid) const {
  auto in_grid = [&](double x) { return x >= grid.t0 && x <= grid.t_max; };
  switch (kind) {
    case ObjectiveKind::kIntegratedFlux:
      if (!(t_begin < t_end) || !in_grid(t_begin) || !in_grid(t_end)) {
        throw ValidationError("Objective: integration window must satisfy t0 <= t_begin < t_end <= t_max");
      }
      break;
    case ObjectiveKind::kAsymptoticErgotropy:
      break;
    default:
      if (!in_grid(t)) throw ValidationError("Objective: time outside the evaluation grid");
  }
}

bool Objective::better(double a, double b) const {
  return sense == Sense::kMaximize ? a > b : a < b;
}

void SearchSpace::validate() const {
  if (alpha_mag.empty() || theta0.empty() || theta_rate.empty()) {
    throw ValidationError("SearchSpace: every axis needs at least one value");
  }
  for (double a : alpha_mag) {
    if (!(a >= 0.0) || !std::isfinite(a)) {
      throw ValidationError("SearchSpace: alpha_mag values must be >= 0");
    }
  }
}

// --- cache -----------------------------------------------------------------

EvolutionCache::EvolutionCache(const QubitThermalModel& model,
                               const DensityMatrix& rho0, const TimeGrid& grid)
    : model_(model),
      base_(make_qubit_thermal_strategy(model)),
      grid_(grid),
      states_(evolve(base_, rho0, grid)) {
  const LindbladGenerator gen(base_);
  rates_.reserve(states_.size());
  for (const auto& s : states_) rates_.push_back(gen.apply(s.rho.matrix()));
}

double transformed_flux_at(const EvolutionCache& cache, const LITSchedule& lit,
                           std::size_t k) {
  const double t = cache.states()[k].t;
  const LITParams p = lit.params_of_t(t);
  ComplexMatrix h = cache.base().hamiltonian().matrix() + lit_delta_h(cache.base(), p);
  double power = expectation(h, cache.rates()[k]).real();
  if (lit.dparams_dt) {
    power += expectation(lit_delta_h_rate(cache.base(), p, lit.dparams_dt(t)),
                         cache.states()[k].rho)
                 .real();
  }
  return power;
}

double transformed_energy_at(const EvolutionCache& cache, const LITSchedule& lit,
                             std::size_t k) {
  const double t = cache.states()[k].t;
  const ComplexMatrix h = cache.base().hamiltonian().matrix() +
                          lit_delta_h(cache.base(), lit.params_of_t(t));
  return expectation(h, cache.states()[k].rho).real();
}

double evaluate_objective(const Objective& obj, const QubitLITParams& q,
                          const EvolutionCache& cache) {
  obj.validate(cache.grid());
  const LITSchedule lit = qubit_lit_schedule(q, cache.model());
  const TimeGrid& grid = cache.grid();
  switch (obj.kind) {
    case ObjectiveKind::kInstantaneousFlux:
      return transformed_flux_at(cache, lit, grid.nearest_index(obj.t));
    case ObjectiveKind::kIntegratedFlux: {
      const std::size_t i0 = grid.nearest_index(obj.t_begin);
      const std::size_t i1 = grid.nearest_index(obj.t_end);
      double sum = 0.0;
      double prev = transformed_flux_at(cache, lit, i0);
      for (std::size_t k = i0 + 1; k <= i1; ++k) {
        const double cur = transformed_flux_at(cache, lit, k);
        sum += 0.5 * (prev + cur) * (cache.states()[k].t - cache.states()[k - 1].t);
        prev = cur;
      }
      return sum;
    }
    case ObjectiveKind::kFinalInternalEnergy:
      return transformed_energy_at(cache, lit, grid.nearest_index(obj.t));
    case ObjectiveKind::kAsymptoticErgotropy:
      return qubit_asymptotic_ergotropy(q.alpha(grid.t_max), cache.model());
    case ObjectiveKind::kFinalExcitedPopulation:
      return cache.states()[grid.nearest_index(obj.t)]
          .rho(qubit::kExcited, qubit::kExcited)
          .real();
  }
  throw ValidationError("evaluate_objective: unknown objective kind");
}

double evaluate_objective(const Objective& obj, const QubitLITParams& q,
                          const QubitThermalModel& m, const DensityMatrix& rho0,
                          const TimeGrid& grid) {
  return evaluate_objective(obj, q, EvolutionCache(m, rho0, grid));
}

// --- search ----------------------------------------------------------------

SearchResult grid_search(const Objective& obj, const SearchSpace& space,
                         const EvolutionCache& cache, std::size_t threads) {
  space.validate();
  obj.validate(cache.grid());

  std::vector<SearchRow> table;
  table.reserve(space.size());
  for (double a : space.alpha_mag) {
    for (double rate : space.theta_rate) {
      for (double th : space.theta0) table.push_back({{a, th, rate}, 0.0, false});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < table.size(); i = next++) {
      table[i].objective = evaluate_objective(obj, table[i].params, cache);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, table.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  auto key = [](const QubitLITParams& p) {
    return std::make_tuple(p.alpha_mag, p.theta_rate, p.theta0);
  };
  std::size_t best = 0;
  for (std::size_t i = 1; i < table.size(); ++i) {
    const double v = table[i].objective;
    const double b = table[best].objective;
    if (obj.better(v, b) || (v == b && key(table[i].params) < key(table[best].params))) {
      best = i;
    }
  }
  table[best].is_best = true;
  return {table[best].params, table[best].objective, std::move(table)};
}

SearchResult grid_search(const Objective& obj, const SearchSpace& space,
                         const QubitThermalModel& m, const DensityMatrix& rho0,
                         const TimeGrid& grid, std::size_t threads) {
  return grid_search(obj, space, EvolutionCache(m, rho0, grid), threads);
}

double optimal_phase_instantaneous(const DensityMatrix& rho, const QubitThermalModel& m,
                                   double theta_rate, double t) {
  if (rho.dim() != 2) throw DimensionError("optimal_phase_instantaneous: qubit state required");
  const Complex rho_ge = rho(qubit::kGround, qubit::kExcited);
  if (std::abs(rho_ge) == 0.0) {
    throw ValidationError(
        "optimal_phase_instantaneous: rho_ge = 0, the flux does not depend on the phase");
  }
  const Complex bracket = Complex(0.0, m.omega() + theta_rate) -
                          0.5 * (m.gamma_plus() + m.gamma_minus());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double theta0 = -theta_rate * t - std::arg(bracket) - std::arg(rho_ge);
  theta0 = std::fmod(theta0, two_pi);
  if (theta0 < 0.0) theta0 += two_pi;
  if (theta0 >= two_pi) theta0 -= two_pi;
  return theta0;
}

}  // namespace litsim
