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

#include "qbeats/linalg.hpp"

namespace qbeats {

/// The two Bell-like families:
///   Psi: a|00> + b e^{i theta}|11>
///   Phi: alpha|01> + beta e^{i delta}|10>
enum class BellFamily { Psi, Phi };

struct InitialState {
  BellFamily family = BellFamily::Phi;
  double amp1 = 0.0;   // a or alpha
  double amp2 = 0.0;   // b or beta
  double phase = 0.0;  // theta or delta, radians

  static InitialState psi(double a, double b, double theta = 0.0);
  static InitialState phi(double alpha, double beta, double delta = 0.0);
  /// Maximally entangled member of the family with the given phase.
  static InitialState bell(BellFamily family, double phase = 0.0);

  /// Throws ValidationError unless amp1, amp2 >= 0 and amp1^2 + amp2^2 = 1
  /// within 1e-12.
  void validate() const;

  std::array<complex, 4> ket() const;
  Matrix4 projector() const { return Matrix4::outer(ket()); }
};

struct EvolvedState {
  DensityMatrix4 rho;
  complex g_a;
  complex g_b;
  double t = 0.0;
};

/// Amplitude-damping map of one qubit driven by the survival amplitude g.
/// Throws ValidationError if |g| > 1 + 1e-9.
Matrix2 single_qubit_map(const Matrix2& rho, complex g);

/// Two-qubit state from the closed-form X-state elements.
EvolvedState evolve_psi(const InitialState& s, complex g_a, complex g_b, double t = 0.0);
EvolvedState evolve_phi(const InitialState& s, complex g_a, complex g_b, double t = 0.0);
EvolvedState evolve(const InitialState& s, complex g_a, complex g_b, double t = 0.0);

/// Independent route: applies the single-qubit map to each qubit of an
/// arbitrary initial two-qubit matrix (Kraus form of the local channels).
Matrix4 apply_local_maps(const Matrix4& rho0, complex g_a, complex g_b);

}  // namespace qbeats
