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

#include <string>

#include "litsim/lit.hpp"

namespace litsim {

struct FluxSample {
  double t;
  double power;
  std::string strategy_label;
};

struct ErgotropyReport {
  double value;
  double passive_energy;
  double internal_energy;
};

/// Re Tr(H rho).
double internal_energy(const HermitianOperator& h, const DensityMatrix& rho);

/// P = Tr(H L[rho]) + Tr((dH/dt) rho).
FluxSample energy_flux(const Strategy& s, const DensityMatrix& rho, double t);
FluxSample energy_flux(const StrategySchedule& schedule, const DensityMatrix& rho,
                       double t);

/// Flux correction of switching from s to the LIT-transformed strategy:
///   i<[H, dH]> + sum_mu Re<L_mu^dag [dH, L_mu]> + <d(dH)/dt>.
/// Without analytic rates d(dH)/dt is a central difference with step 1e-6.
double delta_flux_general(const Strategy& s, const LITSchedule& schedule,
                          const DensityMatrix& rho, double t);

/// Closed form for the restricted qubit family:
///   (alpha/2) [i (omega + theta_rate) - (gamma_+ + gamma_-)/2] rho_ge + c.c.,
/// rho_ge = <g|rho|e>.
double delta_flux_qubit(const QubitLITParams& q, const QubitThermalModel& m,
                        const DensityMatrix& rho, double t);

/// Tr(H rho) - sum_i p_i^dec E_i with rho's spectrum descending and H's
/// ascending.
ErgotropyReport ergotropy(const HermitianOperator& h, const DensityMatrix& rho);

struct QubitHPrimeEigensystem {
  double e_plus;
  double e_minus;
  PureState psi_plus;
  PureState psi_minus;
  double g;   // G(alpha) = sqrt(1 + |alpha|^2/omega^2)/2 - 1/2
  double n1;  // G / (2G + 1)
  double n2;  // (G + 1) / (2G + 1)
};

/// Closed-form eigensystem of H' = (omega/2) sigma_z + qubit_delta_h(alpha).
/// psi_+ = sqrt(n1)|g> + e^{i theta} sqrt(n2)|e>,
/// psi_- = sqrt(n2)|g> - e^{i theta} sqrt(n1)|e>, theta = arg(alpha).
QubitHPrimeEigensystem qubit_hprime_eigensystem(Complex alpha, double omega);

/// G(alpha) omega (rho_gg - rho_ee) for the model's Gibbs state.
double qubit_asymptotic_ergotropy(Complex alpha, const QubitThermalModel& m);

}  // namespace litsim
