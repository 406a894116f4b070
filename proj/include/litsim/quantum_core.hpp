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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "litsim/errors.hpp"

namespace litsim {

using Complex = std::complex<double>;

/// Dense d x d complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zeros(std::size_t dim) { return ComplexMatrix(dim); }

  std::size_t dim() const { return dim_; }
  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  Complex& operator()(std::size_t row, std::size_t col) {
    return data_[row * dim_ + col];
  }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * dim_ + col];
  }

  Complex trace() const;
  /// Largest absolute entry.
  double max_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scale);
std::vector<Complex> operator*(const ComplexMatrix& m,
                               std::span<const Complex> v);

ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |a_ij - b_ij|.
double max_norm_diff(const ComplexMatrix& a, const ComplexMatrix& b);

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                      const char* what);

/// Hermitian matrix, checked on construction:
/// ||M - M^dagger||_max <= 1e-10 * max(1, ||M||_max).
class HermitianOperator {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit HermitianOperator(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }

  static bool is_hermitian(const ComplexMatrix& m);

 private:
  ComplexMatrix m_;
};

/// Unit-norm state vector.
class PureState {
 public:
  static constexpr double kTolerance = 1e-10;

  explicit PureState(std::vector<Complex> amplitudes);
  /// Normalizes first; throws on a zero vector.
  static PureState normalized(std::vector<Complex> amplitudes);

  std::size_t dim() const { return amp_.size(); }
  std::span<const Complex> amplitudes() const { return amp_; }
  const Complex& operator[](std::size_t i) const { return amp_[i]; }

  ComplexMatrix projector() const;

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  std::vector<Complex> amp_;
};

/// Density matrix: Hermitian, unit trace, positive semidefinite, all within
/// the tolerances below.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-9;
  static constexpr double kPositivityTolerance = 1e-9;

  explicit DensityMatrix(ComplexMatrix m);
  explicit DensityMatrix(const PureState& psi);

  static DensityMatrix maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return m_(r, c);
  }

 private:
  ComplexMatrix m_;
};

/// Tr(op rho).
Complex expectation(const ComplexMatrix& op, const DensityMatrix& rho);
Complex expectation(const ComplexMatrix& op, const ComplexMatrix& rho);

struct Eigensystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // orthonormal columns, vectors(:, i) <-> values[i]

  std::vector<Complex> vector(std::size_t i) const;
};

/// Cyclic complex Jacobi. Eigenvalues ascending; each eigenvector is scaled so
/// that its largest-magnitude component is real and positive (ties: lowest
/// index).
Eigensystem hermitian_eigensystem(const HermitianOperator& op);

/// Half the trace norm of (a - b).
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Spectral norm of a Hermitian matrix (largest |eigenvalue|).
double spectral_norm(const HermitianOperator& op);

/// Qubit operators in the fixed basis |g> = (1, 0), |e> = (0, 1), with
/// sigma_z |g> = -|g> and sigma_plus = |e><g|. sigma_x and sigma_y are chosen
/// so that [sigma_x, sigma_y] = 2i sigma_z holds in this ordering.
namespace qubit {
inline constexpr std::size_t kGround = 0;
inline constexpr std::size_t kExcited = 1;

ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
ComplexMatrix sigma_plus();
ComplexMatrix sigma_minus();
PureState ground();
PureState excited();
}  // namespace qubit

}  // namespace litsim
