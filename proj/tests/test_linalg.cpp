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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "qbeats/error.hpp"
#include "qbeats/linalg.hpp"

using namespace qbeats;

namespace {

Matrix4 bell_projector(bool psi) {
  const double s = std::sqrt(0.5);
  std::array<complex, 4> v{};
  if (psi) {
    v[1] = s;
    v[2] = s;
  } else {
    v[0] = s;
    v[3] = s;
  }
  return Matrix4::outer(v);
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("eigenvalues of trivial matrices") {
    auto e = hermitian_eigensystem(Matrix4::identity());
    for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

    e = hermitian_eigensystem(Matrix4::diagonal({0.5, 0.0, 0.5, 0.0}));
    CHECK(e.values[0] == doctest::Approx(0.5));
    CHECK(e.values[1] == doctest::Approx(0.5));
    CHECK(std::abs(e.values[2]) < 1e-15);
    CHECK(std::abs(e.values[3]) < 1e-15);

    e = hermitian_eigensystem(bell_projector(false));
    CHECK(std::abs(e.values[0] - 1.0) < 1e-14);
    for (int k = 1; k < 4; ++k) CHECK(std::abs(e.values[k]) < 1e-14);
  }

  TEST_CASE("eigensystem of random Hermitian matrices") {
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix4 m = oracle::random_hermitian();
      const auto e = hermitian_eigensystem(m);
      for (int k = 0; k < 3; ++k) CHECK(e.values[k] >= e.values[k + 1]);
      const Matrix4& v = e.vectors;
      CHECK(max_abs_diff(v.adjoint() * v, Matrix4::identity()) < 1e-10);
      Matrix4 lam;
      for (std::size_t k = 0; k < 4; ++k) lam(k, k) = e.values[k];
      CHECK(max_abs_diff(v * lam * v.adjoint(), m) < 1e-9);
      for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t r = 0; r < 4; ++r) {
          complex mv = 0.0;
          for (std::size_t c = 0; c < 4; ++c) mv += m(r, c) * v(c, k);
          CHECK(std::abs(mv - e.values[k] * v(r, k)) < 1e-10);
        }
    }
  }

  TEST_CASE("Jacobi rotations keep X-state zeros exact") {
    Matrix4 x = Matrix4::diagonal({0.4, 0.3, 0.2, 0.1});
    x(0, 3) = complex{0.1, 0.05};
    x(3, 0) = std::conj(x(0, 3));
    x(1, 2) = complex{-0.02, 0.2};
    x(2, 1) = std::conj(x(1, 2));
    const auto e = hermitian_eigensystem(x);
    // Every eigenvector lies entirely in the {|00>, |11>} or the {|01>, |10>}
    // block.
    for (std::size_t c = 0; c < 4; ++c) {
      const bool outer_block = e.vectors(1, c) == complex{} && e.vectors(2, c) == complex{};
      const bool inner_block = e.vectors(0, c) == complex{} && e.vectors(3, c) == complex{};
      CHECK((outer_block || inner_block));
    }
  }

  TEST_CASE("non-Hermitian input is rejected") {
    Matrix4 m = Matrix4::identity();
    m(0, 1) = 1e-6;
    CHECK_THROWS_AS(hermitian_eigensystem(m), PreconditionError);
    m(0, 1) = 1e-12;
    CHECK_NOTHROW(hermitian_eigensystem(m));
  }

  TEST_CASE("PSD square root") {
    CHECK(max_abs_diff(matrix_sqrt_psd(Matrix4::identity()), Matrix4::identity()) < 1e-15);
    CHECK(max_abs_diff(matrix_sqrt_psd(Matrix4::diagonal({4, 1, 0, 0})), Matrix4::diagonal({2, 1, 0, 0})) < 1e-15);

    // X state with a^2 = 0.5 and |G_A|^2 = |G_B|^2 = 0.5 in the psi family.
    Matrix4 rho = Matrix4::diagonal({0.625, 0.125, 0.125, 0.125});
    rho(0, 3) = rho(3, 0) = 0.25;
    const Matrix4 r = matrix_sqrt_psd(rho);
    CHECK(max_abs_diff(r * r, rho) < 1e-12);
    CHECK(hermiticity_defect(r) < 1e-14);
    for (double v : hermitian_eigensystem(r).values) CHECK(v >= 0.0);

    for (int trial = 0; trial < 30; ++trial) {
      const Matrix4 m = oracle::random_density();
      const Matrix4 s = matrix_sqrt_psd(m);
      CHECK(max_abs_diff(s * s, m) < 1e-9);
    }
  }

  TEST_CASE("PSD square root clamps round-off and rejects negative spectra") {
    CHECK_NOTHROW(matrix_sqrt_psd(Matrix4::diagonal({1.0, -5e-11, 0.0, 0.0})));
    CHECK(matrix_sqrt_psd(Matrix4::diagonal({1.0, -5e-11, 0.0, 0.0}))(1, 1) == complex{});
    CHECK_THROWS_AS(matrix_sqrt_psd(Matrix4::diagonal({1.0, -1e-6, 0.0, 0.0})), NumericalError);
  }

  TEST_CASE("singular values match eigenvalues of M^dagger M") {
    for (int trial = 0; trial < 30; ++trial) {
      Matrix4 m;
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = oracle::gaussian_complex();
      const auto sv = singular_values(m);
      const auto ev = hermitian_eigensystem(m.adjoint() * m).values;
      for (int k = 0; k < 4; ++k) CHECK(sv[k] == doctest::Approx(std::sqrt(std::max(0.0, ev[k]))).epsilon(1e-10));
    }
  }

  TEST_CASE("partial trace examples") {
    std::array<complex, 4> v{};
    v[1] = 1.0;  // |01>
    const DensityMatrix4 prod(Matrix4::outer(v));
    CHECK(max_abs_diff(partial_trace(prod, Subsystem::A), Matrix2::diagonal({1, 0})) < 1e-15);
    CHECK(max_abs_diff(partial_trace(prod, Subsystem::B), Matrix2::diagonal({0, 1})) < 1e-15);

    const DensityMatrix4 bell(bell_projector(true));
    CHECK(max_abs_diff(partial_trace(bell, Subsystem::B), Matrix2::diagonal({0.5, 0.5})) < 1e-15);

    // Phi family, alpha^2 = 0.5, |G_A|^2 = 0.8, |G_B|^2 = 0.6: element
    // bookkeeping gives rho_B = diag(1 - 0.5 * 0.6, 0.5 * 0.6).
    Matrix4 phi = Matrix4::diagonal({0.3, 0.3, 0.4, 0.0});
    phi(1, 2) = 0.5 * std::sqrt(0.48);
    phi(2, 1) = phi(1, 2);
    CHECK(max_abs_diff(partial_trace(DensityMatrix4(phi), Subsystem::B), Matrix2::diagonal({0.7, 0.3})) < 1e-15);
  }

  TEST_CASE("partial trace of product states") {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix2 a = oracle::random_qubit_density();
      const Matrix2 b = oracle::random_qubit_density();
      const Matrix4 ab = kron(a, b);
      CHECK(max_abs_diff(partial_trace(ab, Subsystem::A), a) < 1e-12);
      CHECK(max_abs_diff(partial_trace(ab, Subsystem::B), b) < 1e-12);
    }
  }

  TEST_CASE("von Neumann entropy") {
    CHECK(std::abs(von_neumann_entropy(bell_projector(false))) < 1e-12);
    CHECK(von_neumann_entropy(Matrix2::diagonal({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
    const double expected = oracle::xlog2x(0.25) + oracle::xlog2x(0.75);
    CHECK(von_neumann_entropy(Matrix2::diagonal({0.25, 0.75})) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(expected == doctest::Approx(0.8112781244591328).epsilon(1e-15));
    CHECK(von_neumann_entropy(Matrix4::identity() * complex{0.25}) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(von_neumann_entropy(Matrix2::diagonal({0.5, 0.6})), ValidationError);
  }

  TEST_CASE("entropy is unitarily invariant") {
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix4 rho = oracle::random_density();
      const Matrix4 u = oracle::random_unitary();
      CHECK(std::abs(von_neumann_entropy(u * rho * u.adjoint()) - von_neumann_entropy(rho)) < 1e-9);
    }
  }

  TEST_CASE("entropy bounds") {
    for (int trial = 0; trial < 50; ++trial) {
      const double s = von_neumann_entropy(oracle::random_density());
      CHECK(s >= 0.0);
      CHECK(s <= 2.0 + 1e-12);
    }
  }

  TEST_CASE("density matrix validation") {
    CHECK_NOTHROW(DensityMatrix4(bell_projector(true)));
    CHECK_THROWS_AS(DensityMatrix4(Matrix4::identity()), ValidationError);
    CHECK_THROWS_AS(DensityMatrix4(Matrix4::diagonal({1.1, -0.1, 0, 0})), ValidationError);
    Matrix4 m = Matrix4::diagonal({0.5, 0.5, 0, 0});
    m(0, 1) = 0.1;
    CHECK_THROWS_AS(DensityMatrix4{m}, ValidationError);
  }

  TEST_CASE("Shannon entropy helpers") {
    const std::array<double, 2> p{0.25, 0.75};
    CHECK(shannon_entropy(p) == doctest::Approx(0.8112781244591328).epsilon(1e-15));
    CHECK(binary_entropy_of_bias(0.5) == doctest::Approx(0.8112781244591328).epsilon(1e-15));
    CHECK(binary_entropy_of_bias(1.0) == 0.0);
    CHECK(binary_entropy_of_bias(0.0) == doctest::Approx(1.0));
  }
}
