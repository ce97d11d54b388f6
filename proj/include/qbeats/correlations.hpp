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

#include "qbeats/dynamics.hpp"
#include "qbeats/linalg.hpp"

namespace qbeats {

/// Projective measurement on qubit B along the Bloch direction (theta, phi):
/// Pi_0 = |v><v| with |v> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>,
/// Pi_1 = I - Pi_0.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  Matrix2 projector(int outcome) const;
};

enum class DiscordMethod { Analytic, Variational };

/// All quantities in bits, except concurrence.
struct CorrelationValues {
  double concurrence = 0.0;
  double mutual_info = 0.0;
  double classical_corr = 0.0;
  double discord = 0.0;
  DiscordMethod discord_method = DiscordMethod::Analytic;
};

/// Search grid for the measurement optimization: uniform theta in [0, pi]
/// (both ends included), phi in [0, 2 pi), followed by coordinate-wise
/// golden-section refinement around the best grid point.
struct GridSpec {
  int n_theta = 64;
  int n_phi = 64;
  int refine_rounds = 3;
  double angle_tol = 1e-6;
};

struct ClassicalCorrelation {
  double value = 0.0;
  MeasurementBasis argmax;
};

/// Wootters concurrence of an arbitrary two-qubit state. The lambda_i are
/// obtained as singular values of tau = W^T (sigma_y x sigma_y) W, where
/// rho = W W^dagger; they equal the square roots of the eigenvalues of
/// rho * rho_tilde.
double concurrence(const DensityMatrix4& rho);

/// rho_tilde = (sigma_y x sigma_y) rho^* (sigma_y x sigma_y)
Matrix4 spin_flip(const Matrix4& rho);

double concurrence_psi(const InitialState& s, complex g_a, complex g_b);
double concurrence_phi(const InitialState& s, complex g_a, complex g_b);

/// ESD criterion for the Psi family: |a| - |b| sqrt((1-|G_A|^2)(1-|G_B|^2)) < 0.
bool psi_sudden_death(const InitialState& s, complex g_a, complex g_b);

double mutual_information(const DensityMatrix4& rho);

/// S(rho_A) - sum_k p_k S(rho_{A|k}) for a measurement on B. Branches with
/// p_k < 1e-14 carry no weight.
double measured_information(const DensityMatrix4& rho, const MeasurementBasis& basis);

/// Lower bound on the classical correlation (supremum over projective
/// measurements on B) by grid search plus golden-section refinement.
/// Ties on the grid go to the smallest (theta, phi).
ClassicalCorrelation classical_correlation(const DensityMatrix4& rho, const GridSpec& grid = {});

/// I - Q_variational; an upper bound on the true discord.
double discord_variational(const DensityMatrix4& rho, const GridSpec& grid = {});

/// Closed-form discord of the evolved Psi-family X state. Throws
/// ValidationError when rho does not have that structure.
double discord_psi_analytic(const DensityMatrix4& rho);

/// Closed-form discord of the evolved Phi-family state (rho_44 = 0 and a
/// rank-one |01>,|10> block). Throws ValidationError otherwise.
double discord_phi_analytic(const DensityMatrix4& rho);

double discord_analytic(const DensityMatrix4& rho, BellFamily family);

/// Full set of correlation measures for an evolved state.
CorrelationValues correlations(const EvolvedState& state, const InitialState& initial,
                               DiscordMethod method = DiscordMethod::Analytic, const GridSpec& grid = {});

}  // namespace qbeats
