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

#include "litsim/lit.hpp"

#include <cmath>
#include <string>

namespace litsim {

namespace {

constexpr Complex kI{0.0, 1.0};

// (A - A^dag) / 2i
ComplexMatrix anti_hermitian_part_over_i(const ComplexMatrix& a) {
  return (a - dagger(a)) * (Complex(1.0) / (2.0 * kI));
}

void require_channels(const Strategy& s, const LITParams& p, const char* what) {
  if (p.channel_count() != s.channel_count()) {
    throw DimensionError(std::string(what) + ": LIT acts on " +
                         std::to_string(p.channel_count()) +
                         " channels, strategy has " +
                         std::to_string(s.channel_count()));
  }
}

}  // namespace

// --- parameter types -------------------------------------------------------

double LITParams::unitarity_defect(const ComplexMatrix& u) {
  return max_norm_diff(u * dagger(u), ComplexMatrix::identity(u.dim()));
}

LITParams::LITParams(ComplexMatrix u, std::vector<Complex> gamma, double phi)
    : u_(std::move(u)), gamma_(std::move(gamma)), phi_(phi) {
  if (u_.dim() == 0) throw ValidationError("LITParams: empty mixing matrix");
  if (gamma_.size() != u_.dim()) {
    throw DimensionError("LITParams: Gamma has " + std::to_string(gamma_.size()) +
                         " entries, U is " + std::to_string(u_.dim()) + "x" +
                         std::to_string(u_.dim()));
  }
  const double defect = unitarity_defect(u_);
  if (!(defect <= kUnitarityTolerance)) {
    throw ValidationError("LITParams: U is not unitary (||U U^dag - I||_max = " +
                          std::to_string(defect) + " > 1e-10)");
  }
  if (!std::isfinite(phi_)) throw ValidationError("LITParams: phi is not finite");
}

LITParams LITParams::identity(std::size_t channels) {
  return LITParams(ComplexMatrix::identity(channels),
                   std::vector<Complex>(channels), 0.0);
}

LITParamsRate LITParamsRate::zero(std::size_t channels) {
  return {ComplexMatrix::zeros(channels), std::vector<Complex>(channels), 0.0};
}

LITSchedule LITSchedule::constant(LITParams p) {
  const std::size_t m = p.channel_count();
  return {[p](double) { return p; },
          [m](double) { return LITParamsRate::zero(m); }};
}

void QubitLITParams::validate() const {
  if (!(alpha_mag >= 0.0) || !std::isfinite(alpha_mag)) {
    throw ValidationError("QubitLITParams: alpha_mag must be >= 0");
  }
  if (!std::isfinite(theta0) || !std::isfinite(theta_rate)) {
    throw ValidationError("QubitLITParams: theta0 and theta_rate must be finite");
  }
}

Complex QubitLITParams::alpha(double t) const {
  return std::polar(alpha_mag, theta(t));
}

// --- transformation --------------------------------------------------------

ComplexMatrix lit_delta_h(const Strategy& s, const LITParams& p) {
  require_channels(s, p, "lit_delta_h");
  const std::size_t m = p.channel_count();
  ComplexMatrix a(s.dim());
  for (std::size_t nu = 0; nu < m; ++nu) {
    Complex c = 0.0;
    for (std::size_t mu = 0; mu < m; ++mu) c += std::conj(p.gamma()[mu]) * p.u()(mu, nu);
    if (c != Complex{}) a += s.lindblad_ops()[nu] * c;
  }
  ComplexMatrix dh = anti_hermitian_part_over_i(a);
  dh += ComplexMatrix::identity(s.dim()) * Complex(p.phi());
  return dh;
}

ComplexMatrix lit_delta_h_rate(const Strategy& s, const LITParams& p,
                               const LITParamsRate& rate) {
  require_channels(s, p, "lit_delta_h_rate");
  const std::size_t m = p.channel_count();
  if (rate.du.dim() != m || rate.dgamma.size() != m) {
    throw DimensionError("lit_delta_h_rate: rate dimensions do not match params");
  }
  ComplexMatrix a(s.dim());
  for (std::size_t nu = 0; nu < m; ++nu) {
    Complex c = 0.0;
    for (std::size_t mu = 0; mu < m; ++mu) {
      c += std::conj(rate.dgamma[mu]) * p.u()(mu, nu) +
           std::conj(p.gamma()[mu]) * rate.du(mu, nu);
    }
    if (c != Complex{}) a += s.lindblad_ops()[nu] * c;
  }
  ComplexMatrix out = anti_hermitian_part_over_i(a);
  out += ComplexMatrix::identity(s.dim()) * Complex(rate.dphi);
  return out;
}

Strategy apply_lit(const Strategy& s, const LITParams& p) {
  require_channels(s, p, "apply_lit");
  const std::size_t m = p.channel_count();
  const std::size_t d = s.dim();
  std::vector<ComplexMatrix> ops;
  ops.reserve(m);
  for (std::size_t mu = 0; mu < m; ++mu) {
    ComplexMatrix l = ComplexMatrix::identity(d) * p.gamma()[mu];
    for (std::size_t nu = 0; nu < m; ++nu) {
      const Complex w = p.u()(mu, nu);
      if (w != Complex{}) l += s.lindblad_ops()[nu] * w;
    }
    ops.push_back(std::move(l));
  }
  HermitianOperator h(s.hamiltonian().matrix() + lit_delta_h(s, p));
  return Strategy(std::move(h), std::move(ops), s.label());
}

InvarianceCheck verify_invariance(const Strategy& s, const Strategy& s_prime,
                                  double tol) {
  if (s.dim() != s_prime.dim()) {
    throw DimensionError("verify_invariance: system dimensions differ");
  }
  const double dev =
      max_norm_diff(superoperator_matrix(s), superoperator_matrix(s_prime));
  return {dev <= tol, dev};
}

LITParams compose_lit(const LITParams& p2, const LITParams& p1) {
  if (p1.channel_count() != p2.channel_count()) {
    throw DimensionError("compose_lit: channel counts differ");
  }
  const std::size_t m = p1.channel_count();
  const auto u2_gamma1 = p2.u() * std::span<const Complex>(p1.gamma());
  std::vector<Complex> gamma(m);
  Complex cross = 0.0;
  for (std::size_t mu = 0; mu < m; ++mu) {
    gamma[mu] = u2_gamma1[mu] + p2.gamma()[mu];
    cross += std::conj(p2.gamma()[mu]) * u2_gamma1[mu];
  }
  return LITParams(p2.u() * p1.u(), std::move(gamma),
                   p1.phi() + p2.phi() + cross.imag());
}

LITParams inverse_lit(const LITParams& p) {
  ComplexMatrix u_dag = dagger(p.u());
  auto gamma = u_dag * std::span<const Complex>(p.gamma());
  for (auto& g : gamma) g = -g;
  return LITParams(std::move(u_dag), std::move(gamma), -p.phi());
}

StrategySchedule transformed_schedule(const Strategy& base, const LITSchedule& lit) {
  if (!lit.params_of_t) throw ValidationError("transformed_schedule: empty LIT schedule");
  StrategySchedule::StrategyFn at = [base, params = lit.params_of_t](double t) {
    return apply_lit(base, params(t));
  };
  if (!lit.dparams_dt) return StrategySchedule(std::move(at));
  StrategySchedule::HamiltonianRateFn rate =
      [base, params = lit.params_of_t, rates = lit.dparams_dt](double t) {
        return lit_delta_h_rate(base, params(t), rates(t));
      };
  return StrategySchedule(std::move(at), std::move(rate));
}

// --- qubit specialization --------------------------------------------------

Complex qubit_alpha(const LITParams& p, const QubitThermalModel& m) {
  if (p.channel_count() != 2) {
    throw DimensionError("qubit_alpha: the thermal qubit has exactly 2 channels, got " +
                         std::to_string(p.channel_count()));
  }
  constexpr std::size_t plus = 0;
  constexpr std::size_t minus = 1;
  const double sp = std::sqrt(m.gamma_plus());
  const double sm = std::sqrt(m.gamma_minus());
  Complex sum = 0.0;
  for (std::size_t mu = 0; mu < 2; ++mu) {
    sum += std::conj(p.gamma()[mu]) * p.u()(mu, plus) * sp -
           p.gamma()[mu] * std::conj(p.u()(mu, minus)) * sm;
  }
  return -kI * sum;
}

HermitianOperator qubit_delta_h(Complex alpha) {
  return HermitianOperator((qubit::sigma_plus() * alpha +
                            qubit::sigma_minus() * std::conj(alpha)) *
                           Complex(0.5));
}

namespace {

// Gamma realizing a given alpha (and its time derivative, which follows the
// same linear map).
std::vector<Complex> gamma_for_alpha(Complex alpha, const QubitThermalModel& m) {
  if (m.gamma_plus() > 0.0) {
    return {std::conj(kI * alpha / std::sqrt(m.gamma_plus())), 0.0};
  }
  return {0.0, -kI * alpha / std::sqrt(m.gamma_minus())};
}

}  // namespace

LITParams qubit_lit_from_alpha(const QubitLITParams& q, const QubitThermalModel& m,
                               double t) {
  q.validate();
  if (q.alpha_mag == 0.0) return LITParams::identity(2);
  if (m.gamma_plus() <= 0.0 && m.gamma_minus() <= 0.0) {
    throw ValidationError("qubit_lit_from_alpha: both rates vanish, alpha unreachable");
  }
  return LITParams(ComplexMatrix::identity(2), gamma_for_alpha(q.alpha(t), m), 0.0);
}

LITSchedule qubit_lit_schedule(const QubitLITParams& q, const QubitThermalModel& m) {
  q.validate();
  return {[q, m](double t) { return qubit_lit_from_alpha(q, m, t); },
          [q, m](double t) {
            LITParamsRate rate = LITParamsRate::zero(2);
            if (q.alpha_mag == 0.0) return rate;
            const Complex alpha_dot = kI * q.theta_rate * q.alpha(t);
            rate.dgamma = gamma_for_alpha(alpha_dot, m);
            return rate;
          }};
}

}  // namespace litsim
