// Copyright 2026 The qbeats Authors
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

#include <algorithm>
#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace qbeats {

using complex = std::complex<double>;

/// Dense row-major complex matrix of fixed dimension 2 (one qubit) or 4
/// (two qubits, product basis |00>, |01>, |10>, |11>).
template <std::size_t N>
class Matrix {
  static_assert(N == 2 || N == 4, "only qubit and two-qubit matrices");

 public:
  static constexpr std::size_t dim = N;

  constexpr Matrix() = default;

  static constexpr Matrix identity() {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr Matrix diagonal(const std::array<double, N>& d) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  /// |v><v| for a (not necessarily normalized) vector v.
  static constexpr Matrix outer(const std::array<complex, N>& v) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
  }

  constexpr complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  constexpr const complex& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  std::span<const complex, N * N> entries() const { return data_; }

  Matrix adjoint() const {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  Matrix conjugate() const {
    Matrix m;
    for (std::size_t k = 0; k < N * N; ++k) m.data_[k] = std::conj(data_[k]);
    return m;
  }

  complex trace() const {
    complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    for (std::size_t k = 0; k < N * N; ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, complex s) { return a *= s; }
  friend Matrix operator*(complex s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    Matrix m;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) {
        const complex aik = a(i, k);
        if (aik == complex{}) continue;
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  /// Largest entry-wise modulus of (a - b).
  friend double max_abs_diff(const Matrix& a, const Matrix& b) {
    double d = 0.0;
    for (std::size_t k = 0; k < N * N; ++k) d = std::max(d, std::abs(a.data_[k] - b.data_[k]));
    return d;
  }

 private:
  std::array<complex, N * N> data_{};
};

using Matrix2 = Matrix<2>;
using Matrix4 = Matrix<4>;

Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// max |m - m^dagger|
template <std::size_t N>
double hermiticity_defect(const Matrix<N>& m) {
  return max_abs_diff(m, m.adjoint());
}

/// Eigenvalues in descending order; column k of `vectors` is the
/// eigenvector for values[k].
template <std::size_t N>
struct Eigensystem {
  std::array<double, N> values{};
  Matrix<N> vectors;
};

/// Cyclic complex Jacobi diagonalization. Throws PreconditionError when
/// m is not Hermitian within 1e-10.
template <std::size_t N>
Eigensystem<N> hermitian_eigensystem(const Matrix<N>& m);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in (-1e-10, 0) are clamped to 0; anything more negative
/// raises NumericalError.
template <std::size_t N>
Matrix<N> matrix_sqrt_psd(const Matrix<N>& m);

/// Singular values (descending) of a general 4x4 complex matrix by one-sided
/// Jacobi orthogonalization of its columns.
std::array<double, 4> singular_values(const Matrix4& m);

/// -sum p log2 p with 0 log 0 = 0. Entries must be >= -1e-10.
double shannon_entropy(std::span<const double> probabilities);

/// Binary entropy of the pair ((1 - x)/2, (1 + x)/2), in bits.
double binary_entropy_of_bias(double x);

/// von Neumann entropy in bits. Throws ValidationError if the trace is not
/// 1 within 1e-9.
template <std::size_t N>
double von_neumann_entropy(const Matrix<N>& rho);

enum class Subsystem { A, B };

/// Two-qubit density matrix: Hermitian (1e-12), unit trace (1e-12), all
/// eigenvalues >= -1e-10. Construction validates.
class DensityMatrix4 {
 public:
  explicit DensityMatrix4(const Matrix4& m);

  const Matrix4& matrix() const { return m_; }
  const complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
  Matrix4 m_;
};

/// Reduced state of qubit `keep`. Qubit A is the left tensor factor.
Matrix2 partial_trace(const Matrix4& rho, Subsystem keep);
inline Matrix2 partial_trace(const DensityMatrix4& rho, Subsystem keep) {
  return partial_trace(rho.matrix(), keep);
}

}  // namespace qbeats
