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
#include <vector>

#include "litsim/dynamics.hpp"

namespace litsim {

/// Lindbladian invariance transformation parameters:
///   L'_mu = sum_nu U_{mu nu} L_nu + Gamma_mu 1
///   H'    = H + (1/2i) sum (Gamma*_mu U_{mu nu} L_nu - Gamma_mu U*_{mu nu} L_nu^dag) + phi 1
class LITParams {
 public:
  static constexpr double kUnitarityTolerance = 1e-10;

  LITParams(ComplexMatrix u, std::vector<Complex> gamma, double phi = 0.0);
  static LITParams identity(std::size_t channels);

  const ComplexMatrix& u() const { return u_; }
  const std::vector<Complex>& gamma() const { return gamma_; }
  double phi() const { return phi_; }
  std::size_t channel_count() const { return u_.dim(); }

  /// ||U U^dag - I||_max.
  static double unitarity_defect(const ComplexMatrix& u);

 private:
  ComplexMatrix u_;
  std::vector<Complex> gamma_;
  double phi_;
};

/// Time derivative of LIT parameters. No unitarity constraint applies.
struct LITParamsRate {
  ComplexMatrix du;
  std::vector<Complex> dgamma;
  double dphi = 0.0;

  static LITParamsRate zero(std::size_t channels);
};

struct LITSchedule {
  std::function<LITParams(double)> params_of_t;
  /// Optional; flux corrections fall back to finite differences without it.
  std::function<LITParamsRate(double)> dparams_dt;

  static LITSchedule constant(LITParams p);
};

/// Restricted qubit family alpha(t) = |alpha| e^{i (theta0 + theta_rate t)}.
struct QubitLITParams {
  double alpha_mag = 0.0;
  double theta0 = 0.0;
  double theta_rate = 0.0;

  void validate() const;
  double theta(double t) const { return theta0 + theta_rate * t; }
  Complex alpha(double t) const;
};

/// delta H of a LIT applied to s (including phi 1).
ComplexMatrix lit_delta_h(const Strategy& s, const LITParams& p);
/// d(delta H)/dt for a static base strategy and parameter rates.
ComplexMatrix lit_delta_h_rate(const Strategy& s, const LITParams& p,
                               const LITParamsRate& rate);

Strategy apply_lit(const Strategy& s, const LITParams& p);

struct InvarianceCheck {
  bool invariant;
  double max_deviation;
};

/// Compares the superoperator matrices of two strategies in max-norm.
InvarianceCheck verify_invariance(const Strategy& s, const Strategy& s_prime,
                                  double tol);

/// Parameters p with apply_lit(s, p) == apply_lit(apply_lit(s, p1), p2):
/// U = U2 U1, Gamma = U2 Gamma1 + Gamma2, phi = phi1 + phi2 + Im(Gamma2^dag U2 Gamma1).
LITParams compose_lit(const LITParams& p2, const LITParams& p1);
/// (U^dag, -U^dag Gamma, -phi).
LITParams inverse_lit(const LITParams& p);

/// t -> apply_lit(base, lit(t)), with dH'/dt available whenever the LIT
/// schedule carries analytic rates.
StrategySchedule transformed_schedule(const Strategy& base, const LITSchedule& lit);

/// alpha = -i (Gamma*_mu U_{mu+} sqrt(gamma_+) - Gamma_mu U*_{mu-} sqrt(gamma_-))
/// for the two-channel thermal qubit with channel order [+, -].
Complex qubit_alpha(const LITParams& p, const QubitThermalModel& m);

/// The qubit delta H generated by a LIT with coefficient alpha:
/// (alpha sigma_+ + alpha* sigma_-) / 2 = (Re(alpha) sigma_x - Im(alpha) sigma_y) / 2.
HermitianOperator qubit_delta_h(Complex alpha);

/// Simplest LIT realizing alpha(t): U = 1 and a single nonzero Gamma entry,
/// on the + channel when gamma_+ > 0, otherwise on the - channel.
LITParams qubit_lit_from_alpha(const QubitLITParams& q, const QubitThermalModel& m,
                               double t);
LITSchedule qubit_lit_schedule(const QubitLITParams& q, const QubitThermalModel& m);

}  // namespace litsim
