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

#include "litsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace litsim {

Strategy::Strategy(HermitianOperator hamiltonian,
                   std::vector<ComplexMatrix> lindblad_ops, std::string label)
    : hamiltonian_(std::move(hamiltonian)),
      lindblad_ops_(std::move(lindblad_ops)),
      label_(std::move(label)) {
  for (std::size_t mu = 0; mu < lindblad_ops_.size(); ++mu) {
    if (lindblad_ops_[mu].dim() != hamiltonian_.dim()) {
      throw DimensionError("Strategy: Lindblad operator " + std::to_string(mu) +
                           " has dimension " +
                           std::to_string(lindblad_ops_[mu].dim()) +
                           ", Hamiltonian has " +
                           std::to_string(hamiltonian_.dim()));
    }
  }
}

Strategy Strategy::with_label(std::string label) const {
  Strategy copy = *this;
  copy.label_ = std::move(label);
  return copy;
}

double strategy_distance(const Strategy& a, const Strategy& b) {
  if (a.channel_count() != b.channel_count()) {
    throw DimensionError("strategy_distance: channel counts differ");
  }
  double d = max_norm_diff(a.hamiltonian().matrix(), b.hamiltonian().matrix());
  for (std::size_t mu = 0; mu < a.channel_count(); ++mu) {
    d = std::max(d, max_norm_diff(a.lindblad_ops()[mu], b.lindblad_ops()[mu]));
  }
  return d;
}

// --- StrategySchedule ------------------------------------------------------

StrategySchedule::StrategySchedule(StrategyFn strategy_at,
                                   HamiltonianRateFn hamiltonian_rate)
    : strategy_at_(std::move(strategy_at)),
      hamiltonian_rate_(std::move(hamiltonian_rate)) {
  if (!strategy_at_) throw ValidationError("StrategySchedule: empty function");
}

StrategySchedule StrategySchedule::constant(Strategy s) {
  StrategySchedule out([s](double) { return s; });
  out.constant_ = std::move(s);
  return out;
}

Strategy StrategySchedule::at(double t) const {
  if (constant_) return *constant_;
  return strategy_at_(t);
}

bool StrategySchedule::has_hamiltonian_rate() const {
  return constant_.has_value() || static_cast<bool>(hamiltonian_rate_);
}

ComplexMatrix StrategySchedule::hamiltonian_rate(double t) const {
  if (constant_) return ComplexMatrix::zeros(constant_->dim());
  if (!hamiltonian_rate_) {
    throw ValidationError(
        "StrategySchedule: time-dependent schedule has no dH/dt");
  }
  return hamiltonian_rate_(t);
}

// --- TimeGrid --------------------------------------------------------------

TimeGrid::TimeGrid(double t0_, double t_max_, double dt_)
    : t0(t0_), t_max(t_max_), dt(dt_) {
  validate();
}

void TimeGrid::validate() const {
  if (!std::isfinite(t0) || !std::isfinite(t_max) || !(t0 < t_max)) {
    throw ValidationError("TimeGrid: need finite t0 < t_max");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("TimeGrid: dt must be positive");
  }
  if ((t_max - t0) / dt > 1e8) {
    throw ValidationError("TimeGrid: more than 1e8 steps");
  }
}

std::size_t TimeGrid::step_count() const {
  const double span = (t_max - t0) / dt;
  const auto whole = static_cast<std::size_t>(std::floor(span + 1e-9));
  const double remainder = (t_max - t0) - static_cast<double>(whole) * dt;
  return remainder > 1e-9 * dt ? whole + 1 : std::max<std::size_t>(whole, 1);
}

std::vector<double> TimeGrid::points() const {
  const std::size_t n = step_count();
  std::vector<double> pts(n + 1);
  for (std::size_t k = 0; k < n; ++k) pts[k] = t0 + static_cast<double>(k) * dt;
  pts[n] = t_max;
  return pts;
}

std::size_t TimeGrid::nearest_index(double t) const {
  const std::size_t n = step_count();
  if (t <= t0) return 0;
  if (t >= t_max) return n;
  const auto k = static_cast<std::size_t>(std::llround((t - t0) / dt));
  if (k >= n) {
    // between the last regular point and t_max
    const double last_regular = t0 + static_cast<double>(n - 1) * dt;
    return (t - last_regular) < (t_max - t) ? n - 1 : n;
  }
  return k;
}

// --- QubitThermalModel -----------------------------------------------------

QubitThermalModel::QubitThermalModel(double omega, double gamma0, double beta_f)
    : omega_(omega), gamma0_(gamma0), beta_f_(beta_f) {
  if (!(omega_ > 0.0) || !std::isfinite(omega_)) {
    throw ValidationError("QubitThermalModel: omega must be positive");
  }
  if (!(gamma0_ > 0.0) || !std::isfinite(gamma0_)) {
    throw ValidationError("QubitThermalModel: gamma0 must be positive");
  }
  if (!(beta_f_ > 0.0)) {
    throw ValidationError("QubitThermalModel: beta_f must be positive");
  }
}

double QubitThermalModel::mean_occupation() const {
  if (std::isinf(beta_f_)) return 0.0;
  return 1.0 / std::expm1(beta_f_ * omega_);
}

HermitianOperator QubitThermalModel::hamiltonian() const {
  return HermitianOperator(qubit::sigma_z() * Complex(0.5 * omega_));
}

DensityMatrix QubitThermalModel::gibbs() const {
  return gibbs_state(hamiltonian(), beta_f_);
}

// --- Generator -------------------------------------------------------------

LindbladGenerator::LindbladGenerator(const Strategy& s)
    : dim_(s.dim()), heff_(s.hamiltonian().matrix()) {
  const Complex half_i{0.0, 0.5};
  ops_.reserve(s.channel_count());
  ops_dag_.reserve(s.channel_count());
  for (const auto& l : s.lindblad_ops()) {
    ops_.push_back(l);
    ops_dag_.push_back(dagger(l));
    heff_ -= half_i * (ops_dag_.back() * l);
  }
  heff_dag_ = dagger(heff_);
}

ComplexMatrix LindbladGenerator::apply(const ComplexMatrix& rho) const {
  if (rho.dim() != dim_) {
    throw DimensionError("generator_apply: state dimension " +
                         std::to_string(rho.dim()) + " vs strategy " +
                         std::to_string(dim_));
  }
  const Complex minus_i{0.0, -1.0};
  ComplexMatrix out = (heff_ * rho - rho * heff_dag_) * minus_i;
  for (std::size_t mu = 0; mu < ops_.size(); ++mu) {
    out += ops_[mu] * rho * ops_dag_[mu];
  }
  return out;
}

ComplexMatrix generator_apply(const Strategy& s, const ComplexMatrix& rho) {
  return LindbladGenerator(s).apply(rho);
}

ComplexMatrix generator_apply(const Strategy& s, const DensityMatrix& rho) {
  return generator_apply(s, rho.matrix());
}

// --- Integration -----------------------------------------------------------

namespace {

template <typename GeneratorAt>
ComplexMatrix rk4(GeneratorAt&& generator_at, const ComplexMatrix& rho, double t,
                  double h) {
  const Complex half = 0.5 * h;
  const Complex full = h;
  const ComplexMatrix k1 = generator_at(t).apply(rho);
  const ComplexMatrix k2 = generator_at(t + 0.5 * h).apply(rho + k1 * half);
  const ComplexMatrix k3 = generator_at(t + 0.5 * h).apply(rho + k2 * half);
  const ComplexMatrix k4 = generator_at(t + h).apply(rho + k3 * full);
  ComplexMatrix incr = k1 + k4;
  incr += Complex(2.0) * (k2 + k3);
  return rho + incr * Complex(h / 6.0);
}

std::vector<StateSample> integrate(const StrategySchedule& schedule,
                                   const DensityMatrix& rho0,
                                   const TimeGrid& grid) {
  grid.validate();
  const auto pts = grid.points();
  std::vector<StateSample> out;
  out.reserve(pts.size());
  out.push_back({pts.front(), rho0});

  std::optional<LindbladGenerator> fixed;
  if (schedule.is_static()) {
    fixed.emplace(schedule.at(pts.front()));
    if (fixed->dim() != rho0.dim()) {
      throw DimensionError("evolve: initial state does not match strategy");
    }
  }
  auto generator_at = [&](double t) -> LindbladGenerator {
    if (fixed) return *fixed;
    return LindbladGenerator(schedule.at(t));
  };

  ComplexMatrix rho = rho0.matrix();
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double t = pts[k];
    const double h = pts[k + 1] - t;
    if (fixed) {
      rho = rk4([&](double) -> const LindbladGenerator& { return *fixed; }, rho,
                t, h);
    } else {
      rho = rk4(generator_at, rho, t, h);
    }
    const Complex tr = rho.trace();
    const double drift = std::abs(tr - 1.0);
    if (!(drift <= kTraceRenormalizeLimit)) {
      throw NumericalError("evolve: trace drift " + std::to_string(drift) +
                           " at t = " + std::to_string(pts[k + 1]) +
                           " (step too large?)");
    }
    rho *= Complex(1.0 / tr.real());
    try {
      out.push_back({pts[k + 1], DensityMatrix(rho)});
    } catch (const ValidationError& e) {
      throw NumericalError("evolve: state is no longer a density matrix at t = " +
                           std::to_string(pts[k + 1]) + " (" + e.what() + ")");
    }
  }
  return out;
}

}  // namespace

ComplexMatrix rk4_step(const StrategySchedule& schedule, const ComplexMatrix& rho,
                       double t, double h) {
  return rk4([&](double tt) { return LindbladGenerator(schedule.at(tt)); }, rho,
             t, h);
}

std::vector<StateSample> evolve(const Strategy& s, const DensityMatrix& rho0,
                                const TimeGrid& grid) {
  return integrate(StrategySchedule::constant(s), rho0, grid);
}

std::vector<StateSample> evolve(const StrategySchedule& schedule,
                                const DensityMatrix& rho0, const TimeGrid& grid) {
  return integrate(schedule, rho0, grid);
}

// --- Superoperator ---------------------------------------------------------

std::vector<Complex> vectorize(const ComplexMatrix& m) {
  const std::size_t d = m.dim();
  std::vector<Complex> v(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) v[i + j * d] = m(i, j);
  }
  return v;
}

ComplexMatrix superoperator_matrix(const Strategy& s) {
  const std::size_t d = s.dim();
  const LindbladGenerator gen(s);
  ComplexMatrix out(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t i = 0; i < d; ++i) {
      ComplexMatrix unit(d);
      unit(i, j) = 1.0;
      const auto col = vectorize(gen.apply(unit));
      const std::size_t k = i + j * d;
      for (std::size_t r = 0; r < d * d; ++r) out(r, k) = col[r];
    }
  }
  return out;
}

// --- Model builders --------------------------------------------------------

Strategy make_qubit_thermal_strategy(const QubitThermalModel& m) {
  std::vector<ComplexMatrix> ops;
  ops.push_back(qubit::sigma_plus() * Complex(std::sqrt(m.gamma_plus())));
  ops.push_back(qubit::sigma_minus() * Complex(std::sqrt(m.gamma_minus())));
  return Strategy(m.hamiltonian(), std::move(ops), "qubit-thermal");
}

namespace {
std::vector<double> boltzmann_weights(const std::vector<double>& energies,
                                      double beta) {
  std::vector<double> w(energies.size());
  const double e0 = energies.front();
  double z = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    const double gap = energies[i] - energies.front();
    if (std::isinf(beta)) {
      w[i] = gap <= 0.0 ? 1.0 : 0.0;
    } else {
      w[i] = std::exp(-beta * (energies[i] - e0));
    }
    z += w[i];
  }
  for (auto& x : w) x /= z;
  return w;
}
}  // namespace

DensityMatrix gibbs_state(const HermitianOperator& h, double beta) {
  if (!(beta > 0.0)) throw ValidationError("gibbs_state: beta must be positive");
  const auto eig = hermitian_eigensystem(h);
  const auto w = boltzmann_weights(eig.values, beta);
  const std::size_t d = h.dim();
  ComplexMatrix rho(d);
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        rho(i, j) += w[k] * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
      }
    }
  }
  return DensityMatrix(std::move(rho));
}

PureState boltzmann_pure_state(const HermitianOperator& h, double beta) {
  if (!(beta > 0.0)) {
    throw ValidationError("boltzmann_pure_state: beta must be positive");
  }
  const auto eig = hermitian_eigensystem(h);
  const auto w = boltzmann_weights(eig.values, beta);
  std::vector<Complex> amp(h.dim());
  for (std::size_t k = 0; k < h.dim(); ++k) {
    for (std::size_t i = 0; i < h.dim(); ++i) {
      amp[i] += std::sqrt(w[k]) * eig.vectors(i, k);
    }
  }
  return PureState::normalized(std::move(amp));
}

}  // namespace litsim
