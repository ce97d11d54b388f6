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

#include <complex>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "qbeats/linalg.hpp"

namespace qbeats {

/// Lorentzian reservoir of one qubit. All rates are in units of the free
/// decay rate gamma0, which is 1 by convention.
struct ReservoirParams {
  double gamma0 = 1.0;
  double lambda = 1.0;  // half-width of the Lorentzian (cavity leakage)
  double delta = 0.0;   // qubit-cavity detuning omega0 - omega_c

  /// Throws PreconditionError unless lambda > 0 and gamma0 > 0 (both finite).
  void validate() const;

  /// lambda - i*delta
  complex kappa() const { return {lambda, -delta}; }
};

/// Lorentzian spectral density J(omega) for a qubit of transition
/// frequency omega0; peaks at omega0 - omega = delta.
double spectral_density(double omega, const ReservoirParams& p, double omega0 = 0.0);

/// Reservoir correlation function f(dt) = gamma0*lambda/2 * exp(-(lambda - i delta) dt).
complex kernel(double dt, const ReservoirParams& p);

/// Exact survival amplitude G(t) for the Lorentzian kernel.
complex g_closed_form(double t, const ReservoirParams& p);

/// Root d = sqrt(kappa^2 - 2 gamma0 lambda) on the principal branch.
complex g_root(const ReservoirParams& p);

namespace detail {

/// e^{-kappa t/2} [cosh(d t/2) + (kappa/d_coef) sinh(d t/2)].
/// With d_coef == d this is G(t) and is regular at d = 0. Passing a
/// different d_coef exists for fault-injection tests only.
complex g_from_root(double t, complex kappa, complex d, complex d_coef);

}  // namespace detail

struct VolterraDiagnostics {
  double step = 0.0;
  /// Estimated max absolute error of G over the grid (step doubling);
  /// NaN when not estimated.
  double error_estimate = std::numeric_limits<double>::quiet_NaN();
  double tolerance = 0.0;
  bool within_tolerance = true;
  std::string note;
};

/// Time-sampled survival amplitude; values[0] == 1.
struct GTrace {
  std::vector<double> times;
  std::vector<complex> values;
  VolterraDiagnostics diagnostics;
};

struct VolterraOptions {
  double tolerance = 1e-6;
  bool estimate_error = true;
  /// Quadrature solver only: Richardson-combine the step-h and step-2h
  /// solutions. The returned trace then lives on the step-2h grid.
  bool extrapolate = false;
};

/// Uniformly tabulated kernel f(k * spacing), k = 0..size-1.
struct KernelTable {
  double spacing = 0.0;
  std::vector<complex> values;
};

KernelTable tabulate_kernel(const ReservoirParams& p, double spacing, std::size_t count);

/// Text format: one row per sample, whitespace separated "dt re im",
/// '#' starts a comment. Rows must be uniformly spaced starting at dt = 0.
KernelTable read_kernel_table(std::istream& in);
void write_kernel_table(std::ostream& out, const KernelTable& table);

/// Solves dG/dt = -int_0^t f(t - s) G(s) ds, G(0) = 1, for the Lorentzian
/// kernel by its exact reduction to the pair
///   G' = -(gamma0 lambda / 2) z,  z' = G - kappa z
/// integrated with classic RK4. Returns n_steps + 1 samples on [0, t_max].
GTrace volterra_solve(const ReservoirParams& p, double t_max, int n_steps,
                      const VolterraOptions& options = {});

/// Generic second-order solver for an arbitrary tabulated kernel:
/// trapezoidal quadrature of the memory integral, trapezoidal stepping of
/// G. Step = table spacing; needs at least n_steps + 1 kernel samples.
/// Cost is O(n_steps^2).
GTrace volterra_solve(const KernelTable& kernel_table, int n_steps, const VolterraOptions& options = {});

}  // namespace qbeats
