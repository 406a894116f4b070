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

#include "litsim/quantum_core.hpp"
#include "support.hpp"

using namespace litsim;

namespace {

const Complex I{0.0, 1.0};

// 2x2 products written out by hand, independent of operator*.
ComplexMatrix mul2(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix{{a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1)},
                       {a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1)}};
}

}  // namespace

TEST_CASE("dagger") {
  CHECK(dagger(ComplexMatrix::identity(2)) == ComplexMatrix::identity(2));
  CHECK(dagger(qubit::sigma_plus()) == qubit::sigma_minus());
  CHECK(dagger(ComplexMatrix{{I, 0.0}, {0.0, 0.0}}) == ComplexMatrix{{-I, 0.0}, {0.0, 0.0}});

  testsupport::Random rng(1);
  for (int k = 0; k < 20; ++k) {
    const auto m = rng.matrix(1 + k % 5);
    CHECK(dagger(dagger(m)) == m);
  }
}

TEST_CASE("commutator and anticommutator") {
  using namespace qubit;
  CHECK(commutator(sigma_z(), sigma_z()).max_norm() == 0.0);

  const ComplexMatrix xy = mul2(sigma_x(), sigma_y()) - mul2(sigma_y(), sigma_x());
  CHECK(max_norm_diff(xy, 2.0 * I * sigma_z()) == 0.0);
  CHECK(max_norm_diff(commutator(sigma_x(), sigma_y()), 2.0 * I * sigma_z()) == 0.0);
  CHECK(max_norm_diff(anticommutator(sigma_x(), sigma_x()), 2.0 * ComplexMatrix::identity(2)) == 0.0);

  testsupport::Random rng(2);
  for (int k = 0; k < 20; ++k) {
    const auto a = rng.matrix(3);
    const auto b = rng.matrix(3);
    CHECK(commutator(a, b) == -1.0 * commutator(b, a));
  }
  CHECK_THROWS_AS(commutator(sigma_x(), ComplexMatrix::identity(3)), DimensionError);
  CHECK_THROWS_AS(anticommutator(sigma_x(), ComplexMatrix::identity(3)), DimensionError);
}

TEST_CASE("basis convention") {
  using namespace qubit;
  CHECK(expectation(sigma_z(), DensityMatrix(ground())).real() == doctest::Approx(-1.0));
  CHECK(expectation(sigma_z(), DensityMatrix(excited())).real() == doctest::Approx(1.0));
  const auto raised = sigma_plus() * ground().amplitudes();
  CHECK(std::abs(raised[kExcited] - 1.0) == 0.0);
  CHECK(std::abs(raised[kGround]) == 0.0);
}

TEST_CASE("expectation") {
  testsupport::Random rng(3);
  for (int k = 0; k < 10; ++k) {
    const auto rho = rng.density(4);
    CHECK(std::abs(expectation(ComplexMatrix::identity(4), rho) - 1.0) < 1e-12);
    const auto h = rng.hermitian(4);
    CHECK(std::abs(expectation(h.matrix(), rho).imag()) <= 1e-10);
  }
  const DensityMatrix diag(ComplexMatrix{{0.7, 0.0}, {0.0, 0.3}});
  CHECK(std::abs(expectation(qubit::sigma_x(), diag)) == 0.0);
  CHECK_THROWS_AS(expectation(ComplexMatrix::identity(3), diag), DimensionError);
}

TEST_CASE("validated types reject bad input") {
  CHECK_THROWS_AS(HermitianOperator(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), ValidationError);
  CHECK_THROWS_AS(PureState({1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(PureState::normalized({0.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{0.6, 0.0}, {0.0, 0.6}}), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), ValidationError);
  CHECK_THROWS_AS(DensityMatrix(ComplexMatrix{{0.5, 0.1}, {0.2, 0.5}}), ValidationError);
  CHECK_NOTHROW(DensityMatrix::maximally_mixed(5));
}

TEST_CASE("hermitian_eigensystem examples") {
  auto e = hermitian_eigensystem(HermitianOperator(qubit::sigma_z()));
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));

  e = hermitian_eigensystem(HermitianOperator(qubit::sigma_z() + qubit::sigma_x()));
  CHECK(std::abs(e.values[0] + std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(e.values[1] - std::sqrt(2.0)) < 1e-12);

  e = hermitian_eigensystem(
      HermitianOperator(ComplexMatrix{{3.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 2.0}}));
  CHECK(e.values == std::vector<double>{1.0, 2.0, 3.0});

  e = hermitian_eigensystem(HermitianOperator(ComplexMatrix::identity(3)));
  CHECK(e.values == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("hermitian_eigensystem reconstructs random operators") {
  testsupport::Random rng(4);
  for (std::size_t d = 1; d <= 8; ++d) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto h = rng.hermitian(d);
      const auto e = hermitian_eigensystem(h);
      ComplexMatrix rebuilt(d);
      for (std::size_t i = 0; i < d; ++i) {
        if (i > 0) CHECK(e.values[i - 1] <= e.values[i]);
        const auto v = e.vector(i);
        const auto hv = h.matrix() * v;
        std::size_t big = 0;
        for (std::size_t r = 0; r < d; ++r) {
          CHECK(std::abs(hv[r] - e.values[i] * v[r]) < 1e-9);
          if (std::abs(v[r]) > std::abs(v[big]) + 1e-10) big = r;
          for (std::size_t c = 0; c < d; ++c) rebuilt(r, c) += e.values[i] * v[r] * std::conj(v[c]);
        }
        CHECK(std::abs(v[big].imag()) < 1e-12);
        CHECK(v[big].real() > 0.0);
      }
      CHECK(max_norm_diff(rebuilt, h.matrix()) < 1e-9);
      CHECK(max_norm_diff(dagger(e.vectors) * e.vectors, ComplexMatrix::identity(d)) < 1e-10);
    }
  }
}

TEST_CASE("trace distance and spectral norm") {
  const DensityMatrix g(qubit::ground());
  const DensityMatrix ex(qubit::excited());
  CHECK(trace_distance(g, ex) == doctest::Approx(1.0));
  CHECK(trace_distance(g, g) == doctest::Approx(0.0));
  CHECK(trace_distance(g, DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));
  CHECK(spectral_norm(HermitianOperator(-3.0 * qubit::sigma_z())) == doctest::Approx(3.0));
}
