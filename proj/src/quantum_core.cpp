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

#include "litsim/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace litsim {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (data_.size() != dim_ * dim_) {
    throw DimensionError("ComplexMatrix: expected " +
                         std::to_string(dim_ * dim_) + " entries, got " +
                         std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(
    std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
  data_.reserve(dim_ * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw DimensionError("ComplexMatrix: rows must form a square matrix");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_norm() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "matrix addition");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_dim(*this, other, "matrix subtraction");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matrix product");
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexMatrix operator*(Complex scale, ComplexMatrix m) {
  m *= scale;
  return m;
}

ComplexMatrix operator*(ComplexMatrix m, Complex scale) {
  m *= scale;
  return m;
}

std::vector<Complex> operator*(const ComplexMatrix& m,
                               std::span<const Complex> v) {
  if (v.size() != m.dim()) {
    throw DimensionError("matrix-vector product: dimension mismatch");
  }
  std::vector<Complex> out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) acc += m(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) {
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) out(j, i) = std::conj(m(i, j));
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "anticommutator");
  return a * b + b * a;
}

double max_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_norm_diff");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    m = std::max(m, std::abs(ea[k] - eb[k]));
  }
  return m;
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()) + ")");
  }
}

// --- HermitianOperator -----------------------------------------------------

bool HermitianOperator::is_hermitian(const ComplexMatrix& m) {
  double asym = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = i; j < m.dim(); ++j) {
      asym = std::max(asym, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return asym <= kTolerance * std::max(1.0, m.max_norm());
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.dim() == 0) throw ValidationError("HermitianOperator: empty matrix");
  if (!is_hermitian(m_)) {
    throw ValidationError("HermitianOperator: matrix is not Hermitian");
  }
}

// --- PureState -------------------------------------------------------------

namespace {
double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}
}  // namespace

PureState::PureState(std::vector<Complex> amplitudes)
    : amp_(std::move(amplitudes)) {
  if (amp_.empty()) throw ValidationError("PureState: empty amplitude vector");
  const double n = norm2(amp_);
  if (!(std::abs(n - 1.0) <= kTolerance)) {
    throw ValidationError("PureState: amplitudes are not unit norm (norm = " +
                          std::to_string(n) + ")");
  }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  const double n = norm2(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ValidationError("PureState: cannot normalize a zero vector");
  }
  for (auto& z : amplitudes) z /= n;
  return PureState(std::move(amplitudes));
}

ComplexMatrix PureState::projector() const {
  ComplexMatrix p(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) p(i, j) = amp_[i] * std::conj(amp_[j]);
  }
  return p;
}

// --- DensityMatrix ---------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (m_.dim() == 0) throw ValidationError("DensityMatrix: empty matrix");
  double asym = 0.0;
  for (std::size_t i = 0; i < m_.dim(); ++i) {
    for (std::size_t j = i; j < m_.dim(); ++j) {
      asym = std::max(asym, std::abs(m_(i, j) - std::conj(m_(j, i))));
    }
  }
  if (!(asym <= kHermitianTolerance * std::max(1.0, m_.max_norm()))) {
    throw ValidationError("DensityMatrix: not Hermitian");
  }
  const Complex tr = m_.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTolerance)) {
    throw ValidationError("DensityMatrix: trace " + std::to_string(tr.real()) +
                          " differs from 1");
  }
  // Hermitian part only; the check above bounds the rest.
  ComplexMatrix herm = m_;
  for (std::size_t i = 0; i < herm.dim(); ++i) {
    herm(i, i) = herm(i, i).real();
    for (std::size_t j = i + 1; j < herm.dim(); ++j) {
      herm(j, i) = std::conj(herm(i, j));
    }
  }
  if (herm.dim() == 1) return;
  const auto eig = hermitian_eigensystem(HermitianOperator(std::move(herm)));
  if (eig.values.front() < -kPositivityTolerance) {
    throw ValidationError("DensityMatrix: negative eigenvalue " +
                          std::to_string(eig.values.front()));
  }
}

DensityMatrix::DensityMatrix(const PureState& psi)
    : DensityMatrix(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) *
                       Complex(1.0 / static_cast<double>(dim)));
}

Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
  require_same_dim(op, rho, "expectation");
  Complex acc = 0.0;
  const std::size_t n = op.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) acc += op(i, k) * rho(k, i);
  }
  return acc;
}

Complex expectation(const ComplexMatrix& op, const DensityMatrix& rho) {
  return expectation(op, rho.matrix());
}

// --- Eigensystem -----------------------------------------------------------

std::vector<Complex> Eigensystem::vector(std::size_t i) const {
  std::vector<Complex> v(vectors.dim());
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = vectors(r, i);
  return v;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p, q). The unitary acting on the
// (p, q) columns is V = diag(1, e^{-i phi}) * R with R the real rotation of
// the phase-rotated 2x2 block.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p,
                   std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex vpp = c;
  const Complex vpq = s;
  const Complex vqp = -s * std::conj(phase);
  const Complex vqq = c * std::conj(phase);

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * vpp + akq * vqp;
    a(k, q) = akp * vpq + akq * vqq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
    a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * vpp + vkq * vqp;
    v(k, q) = vkp * vpq + vkq * vqq;
  }
}

}  // namespace

Eigensystem hermitian_eigensystem(const HermitianOperator& op) {
  constexpr double kOffDiagonalThreshold = 1e-12;
  constexpr int kMaxSweeps = 100;

  const std::size_t n = op.dim();
  ComplexMatrix a = op.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = frobenius_norm(a);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kOffDiagonalThreshold * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, v, p, q);
    }
  }
  if (off_diagonal_norm(a) > kOffDiagonalThreshold * scale) {
    throw NumericalError("hermitian_eigensystem: Jacobi did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  Eigensystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t col = 0; col < n; ++col) {
    const std::size_t src = order[col];
    out.values[col] = a(src, src).real();

    double biggest = 0.0;
    for (std::size_t r = 0; r < n; ++r) biggest = std::max(biggest, std::abs(v(r, src)));
    std::size_t pivot = 0;
    for (std::size_t r = 0; r < n; ++r) {
      if (std::abs(v(r, src)) >= biggest * (1.0 - 1e-10)) {
        pivot = r;
        break;
      }
    }
    const Complex fix = std::conj(v(pivot, src)) / std::abs(v(pivot, src));
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, col) = v(r, src) * fix;
    out.vectors(pivot, col) = std::abs(v(pivot, src));
  }
  return out;
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix diff = a - b;
  for (std::size_t i = 0; i < diff.dim(); ++i) {
    diff(i, i) = diff(i, i).real();
    for (std::size_t j = i + 1; j < diff.dim(); ++j) {
      const Complex avg = 0.5 * (diff(i, j) + std::conj(diff(j, i)));
      diff(i, j) = avg;
      diff(j, i) = std::conj(avg);
    }
  }
  const auto eig = hermitian_eigensystem(HermitianOperator(std::move(diff)));
  double s = 0.0;
  for (double lambda : eig.values) s += std::abs(lambda);
  return 0.5 * s;
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

double spectral_norm(const HermitianOperator& op) {
  const auto eig = hermitian_eigensystem(op);
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

namespace qubit {

ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }

ComplexMatrix sigma_y() {
  const Complex i{0.0, 1.0};
  return {{0.0, i}, {-i, 0.0}};
}

ComplexMatrix sigma_z() { return {{-1.0, 0.0}, {0.0, 1.0}}; }

ComplexMatrix sigma_plus() { return {{0.0, 0.0}, {1.0, 0.0}}; }

ComplexMatrix sigma_minus() { return {{0.0, 1.0}, {0.0, 0.0}}; }

PureState ground() { return PureState({1.0, 0.0}); }

PureState excited() { return PureState({0.0, 1.0}); }

}  // namespace qubit

}  // namespace litsim
