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

#include "qbeats/linalg.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qbeats/error.hpp"

namespace qbeats {
namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kOffDiagonalTol = 1e-14;
constexpr double kClampTol = 1e-10;
constexpr int kMaxSweeps = 64;

// Unitary J (identity except rows/cols p,q) such that (J^dagger A J)_pq = 0
// for the Hermitian 2x2 block [[app, apq], [conj(apq), aqq]].
struct JacobiRotation {
  double c = 1.0;
  double s = 0.0;
  complex phase = 1.0;  // apq / |apq|
};

JacobiRotation jacobi_rotation(double app, double aqq, complex apq) {
  const double g = std::abs(apq);
  JacobiRotation r;
  r.phase = apq / g;
  const double theta = (aqq - app) / (2.0 * g);
  double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  if (theta < 0.0) t = -t;
  r.c = 1.0 / std::sqrt(t * t + 1.0);
  r.s = t * r.c;
  return r;
}

// Right-multiplies the columns p, q of m by the rotation.
template <std::size_t N>
void rotate_columns(Matrix<N>& m, std::size_t p, std::size_t q, const JacobiRotation& r) {
  const complex pb = std::conj(r.phase);
  for (std::size_t i = 0; i < N; ++i) {
    const complex mp = m(i, p);
    const complex mq = m(i, q);
    m(i, p) = r.c * mp - r.s * pb * mq;
    m(i, q) = r.s * mp + r.c * pb * mq;
  }
}

// Left-multiplies rows p, q of m by the adjoint of the rotation.
template <std::size_t N>
void rotate_rows_adjoint(Matrix<N>& m, std::size_t p, std::size_t q, const JacobiRotation& r) {
  const complex ph = r.phase;
  for (std::size_t j = 0; j < N; ++j) {
    const complex mp = m(p, j);
    const complex mq = m(q, j);
    m(p, j) = r.c * mp - r.s * ph * mq;
    m(q, j) = r.s * mp + r.c * ph * mq;
  }
}

template <std::size_t N>
double off_diagonal_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

template <std::size_t N>
double frobenius_norm(const Matrix<N>& a) {
  double s = 0.0;
  for (const auto& x : a.entries()) s += std::norm(x);
  return std::sqrt(s);
}

double clamp_eigenvalue(double v) {
  if (v < -kClampTol)
    throw NumericalError("negative eigenvalue " + std::to_string(v) + " in a positive semidefinite matrix");
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 m;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return m;
}

template <std::size_t N>
Eigensystem<N> hermitian_eigensystem(const Matrix<N>& m) {
  if (const double defect = hermiticity_defect(m); !(defect <= kHermitianTol))
    throw PreconditionError("matrix is not Hermitian (defect " + std::to_string(defect) + ")");

  Matrix<N> a = m;
  Matrix<N> v = Matrix<N>::identity();
  const double threshold = kOffDiagonalTol * std::max(1.0, frobenius_norm(a));

  int sweep = 0;
  while (off_diagonal_norm(a) >= threshold) {
    if (++sweep > kMaxSweeps) throw NumericalError("Jacobi eigensolver did not converge");
    for (std::size_t p = 0; p + 1 < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const auto r = jacobi_rotation(a(p, p).real(), a(q, q).real(), a(p, q));
        rotate_columns(a, p, q, r);
        rotate_rows_adjoint(a, p, q, r);
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        rotate_columns(v, p, q, r);
      }
    }
  }

  std::array<std::size_t, N> order;
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });

  Eigensystem<N> es;
  for (std::size_t k = 0; k < N; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  return es;
}

template <std::size_t N>
Matrix<N> matrix_sqrt_psd(const Matrix<N>& m) {
  const auto es = hermitian_eigensystem(m);
  Matrix<N> r;
  for (std::size_t k = 0; k < N; ++k) {
    const double root = std::sqrt(clamp_eigenvalue(es.values[k]));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j)
        r(i, j) += root * es.vectors(i, k) * std::conj(es.vectors(j, k));
  }
  return r;
}

std::array<double, 4> singular_values(const Matrix4& m) {
  Matrix4 u = m;
  for (int sweep = 0;; ++sweep) {
    if (sweep > kMaxSweeps) throw NumericalError("one-sided Jacobi SVD did not converge");
    bool rotated = false;
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        complex gamma = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
          alpha += std::norm(u(i, p));
          beta += std::norm(u(i, q));
          gamma += std::conj(u(i, p)) * u(i, q);
        }
        if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || std::abs(gamma) < 1e-300) continue;
        rotate_columns(u, p, q, jacobi_rotation(alpha, beta, gamma));
        rotated = true;
      }
    }
    if (!rotated) break;
  }
  std::array<double, 4> s{};
  for (std::size_t k = 0; k < 4; ++k) {
    double n = 0.0;
    for (std::size_t i = 0; i < 4; ++i) n += std::norm(u(i, k));
    s[k] = std::sqrt(n);
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    p = clamp_eigenvalue(p);
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double binary_entropy_of_bias(double x) {
  const std::array<double, 2> p{(1.0 - x) / 2.0, (1.0 + x) / 2.0};
  return shannon_entropy(p);
}

template <std::size_t N>
double von_neumann_entropy(const Matrix<N>& rho) {
  const double tr = rho.trace().real();
  if (!(std::abs(tr - 1.0) <= 1e-9))
    throw ValidationError("entropy of a matrix with trace " + std::to_string(tr));
  const auto es = hermitian_eigensystem(rho);
  return shannon_entropy(es.values);
}

DensityMatrix4::DensityMatrix4(const Matrix4& m) : m_(m) {
  if (const double d = hermiticity_defect(m); !(d <= 1e-12))
    throw ValidationError("density matrix not Hermitian (defect " + std::to_string(d) + ")");
  if (const double tr = m.trace().real(); !(std::abs(tr - 1.0) <= 1e-12))
    throw ValidationError("density matrix trace " + std::to_string(tr) + " != 1");
  const auto es = hermitian_eigensystem(m);
  if (es.values.back() < -kClampTol)
    throw ValidationError("density matrix has negative eigenvalue " + std::to_string(es.values.back()));
}

Matrix2 partial_trace(const Matrix4& rho, Subsystem keep) {
  Matrix2 r;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        if (keep == Subsystem::A)
          r(i, j) += rho(2 * i + k, 2 * j + k);
        else
          r(i, j) += rho(2 * k + i, 2 * k + j);
      }
  return r;
}

template Eigensystem<2> hermitian_eigensystem(const Matrix<2>&);
template Eigensystem<4> hermitian_eigensystem(const Matrix<4>&);
template Matrix<2> matrix_sqrt_psd(const Matrix<2>&);
template Matrix<4> matrix_sqrt_psd(const Matrix<4>&);
template double von_neumann_entropy(const Matrix<2>&);
template double von_neumann_entropy(const Matrix<4>&);

}  // namespace qbeats
