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

// Random operators and states for property tests, plus a few independent
// reference computations that do not go through the library.

#include <cmath>
#include <random>
#include <vector>

#include "litsim/lit.hpp"

namespace testsupport {

using litsim::Complex;
using litsim::ComplexMatrix;

class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  Complex complex_normal() { return {normal(), normal()}; }

  ComplexMatrix matrix(std::size_t d) {
    ComplexMatrix m(d);
    for (auto& z : m.entries()) z = complex_normal();
    return m;
  }

  litsim::HermitianOperator hermitian(std::size_t d) {
    const ComplexMatrix a = matrix(d);
    return litsim::HermitianOperator(0.5 * (a + litsim::dagger(a)));
  }

  // Haar measure: Gram-Schmidt QR of a Ginibre matrix. Gram-Schmidt already
  // makes R's diagonal positive, which is the phase fix Haar sampling needs.
  ComplexMatrix unitary(std::size_t d) {
    ComplexMatrix g = matrix(d);
    for (std::size_t c = 0; c < d; ++c) {
      for (std::size_t p = 0; p < c; ++p) {
        Complex dot = 0.0;
        for (std::size_t r = 0; r < d; ++r) dot += std::conj(g(r, p)) * g(r, c);
        for (std::size_t r = 0; r < d; ++r) g(r, c) -= dot * g(r, p);
      }
      double n = 0.0;
      for (std::size_t r = 0; r < d; ++r) n += std::norm(g(r, c));
      n = std::sqrt(n);
      for (std::size_t r = 0; r < d; ++r) g(r, c) /= n;
    }
    return g;
  }

  std::vector<Complex> complex_vector(std::size_t n) {
    std::vector<Complex> v(n);
    for (auto& z : v) z = complex_normal();
    return v;
  }

  litsim::PureState state(std::size_t d) {
    return litsim::PureState::normalized(complex_vector(d));
  }

  litsim::DensityMatrix density(std::size_t d) {
    const ComplexMatrix g = matrix(d);
    ComplexMatrix rho = g * litsim::dagger(g);
    const Complex tr = rho.trace();
    rho *= 1.0 / tr.real();
    for (std::size_t i = 0; i < d; ++i) rho(i, i).imag(0.0);
    return litsim::DensityMatrix(0.5 * (rho + litsim::dagger(rho)));
  }

  litsim::Strategy strategy(std::size_t d, std::size_t m) {
    std::vector<ComplexMatrix> ls;
    for (std::size_t i = 0; i < m; ++i) ls.push_back(0.5 * matrix(d));
    return litsim::Strategy(hermitian(d), std::move(ls));
  }

  litsim::LITParams lit(std::size_t m) {
    return litsim::LITParams(unitary(m), complex_vector(m), normal());
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Kronecker product a (x) b.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t da = a.dim();
  const std::size_t db = b.dim();
  ComplexMatrix out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = a(i, j) * b(k, l);
  return out;
}

inline ComplexMatrix transpose(const ComplexMatrix& a) {
  ComplexMatrix t(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) t(j, i) = a(i, j);
  return t;
}

inline ComplexMatrix conj(const ComplexMatrix& a) {
  ComplexMatrix c = a;
  for (auto& z : c.entries()) z = std::conj(z);
  return c;
}

/// Column-stacking Liouvillian from vec(A X B) = (B^T (x) A) vec(X).
inline ComplexMatrix kron_superoperator(const litsim::Strategy& s) {
  const std::size_t d = s.dim();
  const ComplexMatrix id = ComplexMatrix::identity(d);
  const ComplexMatrix& h = s.hamiltonian().matrix();
  const Complex i{0.0, 1.0};
  ComplexMatrix out = -i * (kron(id, h) - kron(transpose(h), id));
  for (const auto& l : s.lindblad_ops()) {
    const ComplexMatrix ldl = litsim::dagger(l) * l;
    out += kron(conj(l), l);
    out -= 0.5 * (kron(id, ldl) + kron(transpose(ldl), id));
  }
  return out;
}

/// Unitary transformation (U, Gamma, phi) built from scratch, used as an
/// oracle for apply_lit.
inline litsim::Strategy reference_lit(const litsim::Strategy& s, const litsim::LITParams& p) {
  const std::size_t d = s.dim();
  const std::size_t m = s.channel_count();
  const Complex i{0.0, 1.0};
  std::vector<ComplexMatrix> ls;
  ComplexMatrix delta(d);
  for (std::size_t mu = 0; mu < m; ++mu) {
    ComplexMatrix l = p.gamma()[mu] * ComplexMatrix::identity(d);
    for (std::size_t nu = 0; nu < m; ++nu) l += p.u()(mu, nu) * s.lindblad_ops()[nu];
    ls.push_back(l);
    for (std::size_t nu = 0; nu < m; ++nu) {
      const ComplexMatrix& lnu = s.lindblad_ops()[nu];
      delta += std::conj(p.gamma()[mu]) * p.u()(mu, nu) * lnu;
      delta -= p.gamma()[mu] * std::conj(p.u()(mu, nu)) * litsim::dagger(lnu);
    }
  }
  delta *= 1.0 / (2.0 * i);
  delta += p.phi() * ComplexMatrix::identity(d);
  ComplexMatrix h = s.hamiltonian().matrix() + delta;
  return litsim::Strategy(litsim::HermitianOperator(0.5 * (h + litsim::dagger(h))), ls);
}

}  // namespace testsupport
