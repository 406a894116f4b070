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

#include <doctest.h>

#include <cmath>
#include <limits>

#include "litsim/dynamics.hpp"
#include "support.hpp"

using namespace litsim;

namespace {

const Complex I{0.0, 1.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

Strategy decay_only(double gamma) {
  return Strategy(HermitianOperator(ComplexMatrix(2)), {std::sqrt(gamma) * qubit::sigma_minus()});
}

}  // namespace

TEST_CASE("generator_apply examples") {
  const Strategy closed(HermitianOperator(qubit::sigma_z()), {});
  CHECK(generator_apply(closed, DensityMatrix::maximally_mixed(2)).max_norm() == 0.0);

  const QubitThermalModel m(1.0, 0.05, 0.7);
  CHECK(generator_apply(make_qubit_thermal_strategy(m), m.gibbs()).max_norm() < 1e-12);

  const double gamma = 0.3;
  const auto out = generator_apply(decay_only(gamma), DensityMatrix(qubit::excited()));
  const ComplexMatrix expected{{gamma, 0.0}, {0.0, -gamma}};
  CHECK(max_norm_diff(out, expected) < 1e-15);
}

TEST_CASE("generator output is traceless and Hermitian") {
  testsupport::Random rng(11);
  for (int k = 0; k < 50; ++k) {
    const std::size_t d = 2 + k % 3;
    const auto s = rng.strategy(d, 1 + k % 3);
    const auto out = generator_apply(s, rng.density(d));
    CHECK(std::abs(out.trace()) <= 1e-12 * std::max(1.0, out.max_norm()) * d);
    CHECK(max_norm_diff(out, dagger(out)) <= 1e-10);
  }
  CHECK_THROWS_AS(generator_apply(rng.strategy(3, 1), rng.density(2)), DimensionError);
}

TEST_CASE("strategy rejects mismatched operators") {
  CHECK_THROWS_AS(Strategy(HermitianOperator(qubit::sigma_z()), {ComplexMatrix::identity(3)}),
                  DimensionError);
}

TEST_CASE("qubit thermal model") {
  const QubitThermalModel m(1.0, 1e-2, 1.0);
  CHECK(m.mean_occupation() == doctest::Approx(0.58198).epsilon(1e-5));
  CHECK(m.gamma_minus() == doctest::Approx(1e-2 * (1.0 + 1.0 / (std::exp(1.0) - 1.0))));
  CHECK(std::abs(m.gamma_plus() / m.gamma_minus() / std::exp(-1.0) - 1.0) < 1e-12);

  const QubitThermalModel cold(1.0, 1e-2, kInf);
  CHECK(cold.gamma_plus() == 0.0);
  CHECK(cold.gamma_minus() == 1e-2);

  const Strategy s = make_qubit_thermal_strategy(m);
  REQUIRE(s.channel_count() == 2);
  CHECK(max_norm_diff(s.lindblad_ops()[0], std::sqrt(m.gamma_plus()) * qubit::sigma_plus()) == 0.0);
  CHECK(max_norm_diff(s.lindblad_ops()[1], std::sqrt(m.gamma_minus()) * qubit::sigma_minus()) == 0.0);
  CHECK(max_norm_diff(s.hamiltonian().matrix(), 0.5 * qubit::sigma_z()) == 0.0);

  CHECK_THROWS_AS(QubitThermalModel(1.0, -1e-2, 1.0), ValidationError);
  CHECK_THROWS_AS(QubitThermalModel(0.0, 1e-2, 1.0), ValidationError);
  CHECK_THROWS_AS(QubitThermalModel(1.0, 1e-2, -1.0), ValidationError);
}

TEST_CASE("gibbs_state") {
  const HermitianOperator h(0.5 * qubit::sigma_z());
  CHECK(max_norm_diff(gibbs_state(h, 1e-9).matrix(), 0.5 * ComplexMatrix::identity(2)) < 1e-6);

  const auto rho = gibbs_state(h, 1.0);
  const double e = std::exp(-1.0);
  CHECK(std::abs(rho(0, 0).real() - 1.0 / (1.0 + e)) < 1e-12);
  CHECK(std::abs(rho(1, 1).real() - e / (1.0 + e)) < 1e-12);
  CHECK(rho(0, 0).real() == doctest::Approx(0.73106).epsilon(1e-5));

  CHECK(gibbs_state(h, 5.0)(0, 0).real() == doctest::Approx(0.99331).epsilon(1e-5));
  CHECK(max_norm_diff(gibbs_state(h, kInf).matrix(), DensityMatrix(qubit::ground()).matrix()) == 0.0);
  CHECK_THROWS_AS(gibbs_state(h, 0.0), ValidationError);

  const auto psi = boltzmann_pure_state(h, 5.0);
  CHECK(std::norm(psi[qubit::kGround]) == doctest::Approx(gibbs_state(h, 5.0)(0, 0).real()));
}

TEST_CASE("TimeGrid") {
  const TimeGrid g(0.0, 1.0, 0.3);
  const auto pts = g.points();
  REQUIRE(pts.size() == 5);
  CHECK(pts.back() == 1.0);
  CHECK(g.step_count() == 4);
  CHECK(g.nearest_index(0.61) == 2);
  CHECK(g.nearest_index(5.0) == 4);
  CHECK(TimeGrid(0.0, 1.0, 0.25).points().size() == 5);
  CHECK_THROWS_AS(TimeGrid(1.0, 0.0, 0.1), ValidationError);
  CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1e-9), ValidationError);
}

TEST_CASE("evolve: closed-form unitary rotation") {
  const double omega = 1.3;
  const Strategy s(HermitianOperator(0.5 * omega * qubit::sigma_z()), {});
  const DensityMatrix plus(PureState::normalized({1.0, 1.0}));
  const auto out = evolve(s, plus, TimeGrid(0.0, 5.0, 1e-2));
  for (const auto& sample : out) {
    const Complex want = 0.5 * std::exp(I * omega * sample.t);
    CHECK(std::abs(sample.rho(qubit::kGround, qubit::kExcited) - want) < 1e-9);
  }
}

TEST_CASE("evolve: zero-temperature decay and stationarity") {
  const QubitThermalModel cold(1.0, 0.2, kInf);
  const auto out = evolve(make_qubit_thermal_strategy(cold), DensityMatrix(qubit::excited()),
                          TimeGrid(0.0, 10.0, 1e-2));
  for (const auto& sample : out) {
    CHECK(std::abs(sample.rho(1, 1).real() - std::exp(-0.2 * sample.t)) < 1e-6);
  }

  const QubitThermalModel m(1.0, 0.05, 1.0);
  const auto flat = evolve(make_qubit_thermal_strategy(m), m.gibbs(), TimeGrid(0.0, 20.0, 0.05));
  for (const auto& sample : flat) CHECK(max_norm_diff(sample.rho.matrix(), m.gibbs().matrix()) < 1e-12);
}

TEST_CASE("evolve preserves trace, Hermiticity and positivity") {
  testsupport::Random rng(12);
  const QubitThermalModel m(1.0, 0.3, 0.5);
  const Strategy s = make_qubit_thermal_strategy(m);
  for (int k = 0; k < 5; ++k) {
    const auto rho0 = rng.density(2);
    ComplexMatrix rho = rho0.matrix();
    const auto sched = StrategySchedule::constant(s);
    for (int step = 0; step < 500; ++step) {
      rho = rk4_step(sched, rho, step * 1e-2, 1e-2);
      CHECK(std::abs(rho.trace() - 1.0) <= 1e-9);
      CHECK(max_norm_diff(rho, dagger(rho)) <= 1e-9);
    }
    for (const auto& sample : evolve(s, rho0, TimeGrid(0.0, 5.0, 1e-2))) {
      CHECK(hermitian_eigensystem(HermitianOperator(sample.rho.matrix())).values[0] >= -1e-7);
    }
  }
}

TEST_CASE("evolve reports integration failure") {
  const Strategy s = decay_only(1.0);
  CHECK_THROWS_AS(evolve(s, DensityMatrix(qubit::excited()), TimeGrid(0.0, 100.0, 10.0)),
                  NumericalError);
  CHECK_THROWS_AS(evolve(s, DensityMatrix::maximally_mixed(3), TimeGrid(0.0, 1.0, 0.1)),
                  DimensionError);
}

TEST_CASE("RK4 is fourth order") {
  const QubitThermalModel cold(1.0, 1.0, kInf);
  const Strategy s = make_qubit_thermal_strategy(cold);
  auto error = [&](double dt) {
    const auto out = evolve(s, DensityMatrix(qubit::excited()), TimeGrid(0.0, 2.0, dt));
    return std::abs(out.back().rho(1, 1).real() - std::exp(-2.0));
  };
  CHECK(error(0.1) / error(0.05) >= 12.0);
}

TEST_CASE("superoperator matrix") {
  const Strategy empty(HermitianOperator(ComplexMatrix(3)), {});
  CHECK(superoperator_matrix(empty).max_norm() == 0.0);

  testsupport::Random rng(13);
  for (int k = 0; k < 100; ++k) {
    const std::size_t d = 2 + k % 3;
    const auto s = rng.strategy(d, 1 + k % 2);
    const auto rho = rng.density(d);
    const auto lhs = superoperator_matrix(s) * vectorize(rho.matrix());
    const auto rhs = vectorize(generator_apply(s, rho));
    double diff = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) diff = std::max(diff, std::abs(lhs[i] - rhs[i]));
    CHECK(diff <= 1e-12);
    if (k < 20) CHECK(max_norm_diff(superoperator_matrix(s), testsupport::kron_superoperator(s)) < 1e-12);
  }

  const QubitThermalModel m(1.0, 0.1, 1.0);
  const auto null = superoperator_matrix(make_qubit_thermal_strategy(m)) * vectorize(m.gibbs().matrix());
  for (const auto& z : null) CHECK(std::abs(z) < 1e-14);
}

TEST_CASE("schedule without a Hamiltonian rate") {
  const QubitThermalModel m(1.0, 0.1, 1.0);
  const StrategySchedule sched([&](double) { return make_qubit_thermal_strategy(m); });
  CHECK_FALSE(sched.has_hamiltonian_rate());
  CHECK_THROWS_AS(sched.hamiltonian_rate(0.0), ValidationError);
  CHECK(StrategySchedule::constant(make_qubit_thermal_strategy(m)).hamiltonian_rate(1.0).max_norm() == 0.0);
}
