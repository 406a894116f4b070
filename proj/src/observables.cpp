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

#include "litsim/observables.hpp"

#include <algorithm>
#include <cmath>

namespace litsim {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kFiniteDifferenceStep = 1e-6;
}  // namespace

double internal_energy(const HermitianOperator& h, const DensityMatrix& rho) {
  return expectation(h.matrix(), rho).real();
}

FluxSample energy_flux(const Strategy& s, const DensityMatrix& rho, double t) {
  const ComplexMatrix drho = generator_apply(s, rho);
  return {t, expectation(s.hamiltonian().matrix(), drho).real(), s.label()};
}

FluxSample energy_flux(const StrategySchedule& schedule, const DensityMatrix& rho,
                       double t) {
  const Strategy s = schedule.at(t);
  FluxSample out = energy_flux(s, rho, t);
  if (!schedule.is_static()) {
    out.power += expectation(schedule.hamiltonian_rate(t), rho).real();
  }
  return out;
}

double delta_flux_general(const Strategy& s, const LITSchedule& schedule,
                          const DensityMatrix& rho, double t) {
  if (!schedule.params_of_t) {
    throw ValidationError("delta_flux_general: empty LIT schedule");
  }
  const ComplexMatrix& h = s.hamiltonian().matrix();
  const ComplexMatrix dh = lit_delta_h(s, schedule.params_of_t(t));

  Complex total = kI * expectation(commutator(h, dh), rho);
  for (const auto& l : s.lindblad_ops()) {
    total += expectation(dagger(l) * commutator(dh, l), rho).real();
  }

  ComplexMatrix dh_rate;
  if (schedule.dparams_dt) {
    dh_rate = lit_delta_h_rate(s, schedule.params_of_t(t), schedule.dparams_dt(t));
  } else {
    const double step = kFiniteDifferenceStep;
    dh_rate = (lit_delta_h(s, schedule.params_of_t(t + step)) -
               lit_delta_h(s, schedule.params_of_t(t - step))) *
              Complex(1.0 / (2.0 * step));
  }
  total += expectation(dh_rate, rho);
  return total.real();
}

double delta_flux_qubit(const QubitLITParams& q, const QubitThermalModel& m,
                        const DensityMatrix& rho, double t) {
  if (rho.dim() != 2) {
    throw DimensionError("delta_flux_qubit: state must be a qubit");
  }
  q.validate();
  const Complex rho_ge = rho(qubit::kGround, qubit::kExcited);
  const Complex bracket =
      kI * (m.omega() + q.theta_rate) - 0.5 * (m.gamma_plus() + m.gamma_minus());
  const Complex z = 0.5 * q.alpha(t) * bracket * rho_ge;
  return 2.0 * z.real();
}

ErgotropyReport ergotropy(const HermitianOperator& h, const DensityMatrix& rho) {
  if (h.dim() != rho.dim()) {
    throw DimensionError("ergotropy: Hamiltonian and state dimensions differ");
  }
  ComplexMatrix herm = rho.matrix();
  for (std::size_t i = 0; i < herm.dim(); ++i) {
    herm(i, i) = herm(i, i).real();
    for (std::size_t j = i + 1; j < herm.dim(); ++j) {
      herm(j, i) = std::conj(herm(i, j));
    }
  }
  auto populations = hermitian_eigensystem(HermitianOperator(std::move(herm))).values;
  std::reverse(populations.begin(), populations.end());
  const auto energies = hermitian_eigensystem(h).values;

  double passive = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) passive += populations[i] * energies[i];
  const double u = internal_energy(h, rho);
  return {u - passive, passive, u};
}

QubitHPrimeEigensystem qubit_hprime_eigensystem(Complex alpha, double omega) {
  if (!(omega > 0.0)) {
    throw ValidationError("qubit_hprime_eigensystem: omega must be positive");
  }
  const double ratio = std::abs(alpha) / omega;
  const double g = 0.5 * std::sqrt(1.0 + ratio * ratio) - 0.5;
  const double n1 = g / (2.0 * g + 1.0);
  const double n2 = (g + 1.0) / (2.0 * g + 1.0);
  const double theta = std::arg(alpha);
  const Complex phase = std::polar(1.0, theta);
  const double e = 0.5 * omega * (2.0 * g + 1.0);
  return {e,
          -e,
          PureState::normalized({std::sqrt(n1), phase * std::sqrt(n2)}),
          PureState::normalized({std::sqrt(n2), -phase * std::sqrt(n1)}),
          g,
          n1,
          n2};
}

double qubit_asymptotic_ergotropy(Complex alpha, const QubitThermalModel& m) {
  const auto eig = qubit_hprime_eigensystem(alpha, m.omega());
  const DensityMatrix rho_as = m.gibbs();
  const double imbalance = rho_as(qubit::kGround, qubit::kGround).real() -
                           rho_as(qubit::kExcited, qubit::kExcited).real();
  return eig.g * m.omega() * imbalance;
}

}  // namespace litsim
