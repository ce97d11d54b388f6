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

#include "qbeats/dynamics.hpp"

#include <cmath>
#include <string>

#include "qbeats/error.hpp"

namespace qbeats {
namespace {

constexpr double kMaxG = 1.0 + 1e-9;

void check_amplitude(complex g, const char* which) {
  if (!(std::abs(g) <= kMaxG))
    throw ValidationError(std::string("|") + which + "| = " + std::to_string(std::abs(g)) + " exceeds 1");
}

// Kraus operators of the amplitude-damping channel with survival amplitude g:
// K0 = diag(1, g), K1 = sqrt(1 - |g|^2) |0><1|.
std::array<Matrix2, 2> kraus(complex g) {
  Matrix2 k0;
  k0(0, 0) = 1.0;
  k0(1, 1) = g;
  Matrix2 k1;
  k1(0, 1) = std::sqrt(std::max(0.0, 1.0 - std::norm(g)));
  return {k0, k1};
}

}  // namespace

InitialState InitialState::psi(double a, double b, double theta) {
  InitialState s{BellFamily::Psi, a, b, theta};
  s.validate();
  return s;
}

InitialState InitialState::phi(double alpha, double beta, double delta) {
  InitialState s{BellFamily::Phi, alpha, beta, delta};
  s.validate();
  return s;
}

InitialState InitialState::bell(BellFamily family, double phase) {
  const double r = std::sqrt(0.5);
  return InitialState{family, r, r, phase};
}

void InitialState::validate() const {
  if (!(amp1 >= 0.0 && amp2 >= 0.0)) throw ValidationError("state amplitudes must be non-negative");
  if (!(std::abs(amp1 * amp1 + amp2 * amp2 - 1.0) <= 1e-12))
    throw ValidationError("state not normalized: amp1^2 + amp2^2 = " + std::to_string(amp1 * amp1 + amp2 * amp2));
  if (!std::isfinite(phase)) throw ValidationError("state phase must be finite");
}

std::array<complex, 4> InitialState::ket() const {
  const complex rotated = amp2 * std::polar(1.0, phase);
  if (family == BellFamily::Psi) return {amp1, 0.0, 0.0, rotated};
  return {0.0, amp1, rotated, 0.0};
}

Matrix2 single_qubit_map(const Matrix2& rho, complex g) {
  check_amplitude(g, "G");
  const double p = std::norm(g);
  Matrix2 out;
  out(1, 1) = p * rho(1, 1);
  out(0, 0) = rho(0, 0) + (1.0 - p) * rho(1, 1);
  out(1, 0) = g * rho(1, 0);
  out(0, 1) = std::conj(g) * rho(0, 1);
  return out;
}

EvolvedState evolve_psi(const InitialState& s, complex g_a, complex g_b, double t) {
  if (s.family != BellFamily::Psi) throw PreconditionError("evolve_psi called with a Phi state");
  s.validate();
  check_amplitude(g_a, "G_A");
  check_amplitude(g_b, "G_B");
  const double pa = std::norm(g_a);
  const double pb = std::norm(g_b);
  const double a2 = s.amp1 * s.amp1;
  const double b2 = s.amp2 * s.amp2;

  Matrix4 m;
  m(0, 0) = a2 + (1.0 - pa) * (1.0 - pb) * b2;
  m(1, 1) = (1.0 - pa) * pb * b2;
  m(2, 2) = pa * (1.0 - pb) * b2;
  m(3, 3) = pa * pb * b2;
  m(0, 3) = std::conj(g_a) * std::conj(g_b) * s.amp1 * s.amp2 * std::polar(1.0, -s.phase);
  m(3, 0) = std::conj(m(0, 3));
  return {DensityMatrix4(m), g_a, g_b, t};
}

EvolvedState evolve_phi(const InitialState& s, complex g_a, complex g_b, double t) {
  if (s.family != BellFamily::Phi) throw PreconditionError("evolve_phi called with a Psi state");
  s.validate();
  check_amplitude(g_a, "G_A");
  check_amplitude(g_b, "G_B");
  const double pa = std::norm(g_a);
  const double pb = std::norm(g_b);
  const double al2 = s.amp1 * s.amp1;
  const double be2 = s.amp2 * s.amp2;

  Matrix4 m;
  m(0, 0) = (1.0 - pb) * al2 + (1.0 - pa) * be2;
  m(1, 1) = al2 * pb;
  m(2, 2) = be2 * pa;
  m(1, 2) = s.amp1 * s.amp2 * std::polar(1.0, -s.phase) * std::conj(g_a) * g_b;
  m(2, 1) = std::conj(m(1, 2));
  return {DensityMatrix4(m), g_a, g_b, t};
}

EvolvedState evolve(const InitialState& s, complex g_a, complex g_b, double t) {
  return s.family == BellFamily::Psi ? evolve_psi(s, g_a, g_b, t) : evolve_phi(s, g_a, g_b, t);
}

Matrix4 apply_local_maps(const Matrix4& rho0, complex g_a, complex g_b) {
  check_amplitude(g_a, "G_A");
  check_amplitude(g_b, "G_B");
  Matrix4 out;
  for (const auto& ka : kraus(g_a))
    for (const auto& kb : kraus(g_b)) {
      const Matrix4 k = kron(ka, kb);
      out += k * rho0 * k.adjoint();
    }
  return out;
}

}  // namespace qbeats
