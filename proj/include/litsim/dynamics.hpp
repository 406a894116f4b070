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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "litsim/quantum_core.hpp"

namespace litsim {

/// A concrete operator set {H, L_mu} realizing a GKSL generator. The order of
/// lindblad_ops is significant: LIT mixing matrices index it.
class Strategy {
 public:
  Strategy(HermitianOperator hamiltonian, std::vector<ComplexMatrix> lindblad_ops,
           std::string label = {});

  const HermitianOperator& hamiltonian() const { return hamiltonian_; }
  const std::vector<ComplexMatrix>& lindblad_ops() const { return lindblad_ops_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return hamiltonian_.dim(); }
  std::size_t channel_count() const { return lindblad_ops_.size(); }

  Strategy with_label(std::string label) const;

 private:
  HermitianOperator hamiltonian_;
  std::vector<ComplexMatrix> lindblad_ops_;
  std::string label_;
};

/// max-norm distance between two strategies (H and every L_mu).
double strategy_distance(const Strategy& a, const Strategy& b);

/// Time-dependent strategy t -> {H(t), L_mu(t)}, optionally with the analytic
/// derivative dH/dt needed by the energy flux.
class StrategySchedule {
 public:
  using StrategyFn = std::function<Strategy(double)>;
  using HamiltonianRateFn = std::function<ComplexMatrix(double)>;

  StrategySchedule(StrategyFn strategy_at, HamiltonianRateFn hamiltonian_rate = {});
  static StrategySchedule constant(Strategy s);

  Strategy at(double t) const;
  bool is_static() const { return constant_.has_value(); }
  bool has_hamiltonian_rate() const;
  /// Throws if the schedule is time dependent and carries no derivative.
  ComplexMatrix hamiltonian_rate(double t) const;

 private:
  std::optional<Strategy> constant_;
  StrategyFn strategy_at_;
  HamiltonianRateFn hamiltonian_rate_;
};

/// Uniform grid t0, t0 + dt, ..., ending exactly at t_max (the last step is
/// shortened when (t_max - t0) is not a multiple of dt).
struct TimeGrid {
  double t0 = 0.0;
  double t_max = 1.0;
  double dt = 1e-3;

  TimeGrid() = default;
  TimeGrid(double t0, double t_max, double dt);

  void validate() const;
  std::vector<double> points() const;
  std::size_t step_count() const;
  /// Index of the grid point closest to t.
  std::size_t nearest_index(double t) const;
};

/// Qubit coupled to a thermal bath: gamma_+ = gamma0 nbar,
/// gamma_- = gamma0 (nbar + 1), nbar = 1 / (e^{beta_f omega} - 1).
/// beta_f = +inf is the zero-temperature limit.
class QubitThermalModel {
 public:
  QubitThermalModel(double omega, double gamma0, double beta_f);

  double omega() const { return omega_; }
  double gamma0() const { return gamma0_; }
  double beta_f() const { return beta_f_; }
  double mean_occupation() const;
  double gamma_plus() const { return gamma0_ * mean_occupation(); }
  double gamma_minus() const { return gamma0_ * (mean_occupation() + 1.0); }

  HermitianOperator hamiltonian() const;
  DensityMatrix gibbs() const;

 private:
  double omega_;
  double gamma0_;
  double beta_f_;
};

/// Dense evaluation of drho/dt for a fixed strategy, with the effective
/// non-Hermitian Hamiltonian precomputed.
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const Strategy& s);

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  std::size_t dim() const { return dim_; }

 private:
  std::size_t dim_;
  ComplexMatrix heff_;      // H - (i/2) sum L^dag L
  ComplexMatrix heff_dag_;
  std::vector<ComplexMatrix> ops_;
  std::vector<ComplexMatrix> ops_dag_;
};

ComplexMatrix generator_apply(const Strategy& s, const DensityMatrix& rho);
ComplexMatrix generator_apply(const Strategy& s, const ComplexMatrix& rho);

struct StateSample {
  double t;
  DensityMatrix rho;
};

/// One classical RK4 step of size h (h may be negative).
ComplexMatrix rk4_step(const StrategySchedule& schedule, const ComplexMatrix& rho,
                       double t, double h);

/// Fixed-step RK4. Output has one entry per grid point, each re-validated
/// as a DensityMatrix. Trace drift up to 1e-9 per step is renormalized;
/// anything larger throws NumericalError.
std::vector<StateSample> evolve(const Strategy& s, const DensityMatrix& rho0,
                                const TimeGrid& grid);
std::vector<StateSample> evolve(const StrategySchedule& schedule,
                                const DensityMatrix& rho0, const TimeGrid& grid);

inline constexpr double kTraceRenormalizeLimit = 1e-9;

/// Matrix of the generator acting on column-stacked density matrices:
/// vec(rho)[i + j d] = rho(i, j).
ComplexMatrix superoperator_matrix(const Strategy& s);
std::vector<Complex> vectorize(const ComplexMatrix& m);

/// {H = (omega/2) sigma_z, [sqrt(gamma_+) sigma_+, sqrt(gamma_-) sigma_-]}.
Strategy make_qubit_thermal_strategy(const QubitThermalModel& m);

/// e^{-beta H} / Tr e^{-beta H}; beta = +inf gives the ground-state projector
/// (uniform over a degenerate ground space).
DensityMatrix gibbs_state(const HermitianOperator& h, double beta);

/// sum_i sqrt(p_i) |E_i> with Boltzmann weights p_i at inverse temperature beta.
PureState boltzmann_pure_state(const HermitianOperator& h, double beta);

}  // namespace litsim
