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

#include "qbeats/reservoir.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qbeats/error.hpp"

namespace qbeats {

void ReservoirParams::validate() const {
  if (!(std::isfinite(lambda) && lambda > 0.0))
    throw PreconditionError("reservoir width lambda must be > 0, got " + std::to_string(lambda));
  if (!(std::isfinite(gamma0) && gamma0 > 0.0))
    throw PreconditionError("gamma0 must be > 0, got " + std::to_string(gamma0));
  if (!std::isfinite(delta)) throw PreconditionError("detuning must be finite");
}

double spectral_density(double omega, const ReservoirParams& p, double omega0) {
  const double x = omega0 - omega - p.delta;
  return p.gamma0 * p.lambda * p.lambda / (2.0 * std::numbers::pi * (x * x + p.lambda * p.lambda));
}

complex kernel(double dt, const ReservoirParams& p) {
  if (dt < 0.0) throw PreconditionError("kernel lag must be >= 0");
  return 0.5 * p.gamma0 * p.lambda * std::exp(-p.kappa() * dt);
}

complex g_root(const ReservoirParams& p) {
  const complex k = p.kappa();
  return std::sqrt(k * k - 2.0 * p.gamma0 * p.lambda);
}

namespace detail {

complex g_from_root(double t, complex kappa, complex d, complex d_coef) {
  const complex z = 0.5 * d * t;
  const complex h = 0.5 * kappa * t;
  if (std::abs(z) < 1e-3) {
    // Series keeps the d -> 0 double root regular: sinh(z)/z -> 1.
    const complex z2 = z * z;
    const complex e = std::exp(-h);
    const complex cosh_part = e * (1.0 + z2 / 2.0 + z2 * z2 / 24.0);
    const complex sinhc_part = e * (1.0 + z2 / 6.0 + z2 * z2 / 120.0);
    if (d_coef == d) return cosh_part + h * sinhc_part;
    return cosh_part + (kappa / d_coef) * z * sinhc_part;
  }
  const complex ep = std::exp(z - h);
  const complex em = std::exp(-z - h);
  return 0.5 * (ep + em) + (kappa / d_coef) * 0.5 * (ep - em);
}

}  // namespace detail

complex g_closed_form(double t, const ReservoirParams& p) {
  if (t < 0.0) throw PreconditionError("G(t) requires t >= 0");
  if (t == 0.0) return 1.0;
  const complex d = g_root(p);
  return detail::g_from_root(t, p.kappa(), d, d);
}

namespace {

std::vector<complex> rk4_exponential_kernel(const ReservoirParams& p, double h, int n_steps) {
  const double c = 0.5 * p.gamma0 * p.lambda;
  const complex kappa = p.kappa();
  const auto rhs = [&](complex g, complex z) { return std::pair<complex, complex>{-c * z, g - kappa * z}; };

  std::vector<complex> out(static_cast<std::size_t>(n_steps) + 1);
  complex g = 1.0;
  complex z = 0.0;
  out[0] = g;
  for (int n = 0; n < n_steps; ++n) {
    const auto [k1g, k1z] = rhs(g, z);
    const auto [k2g, k2z] = rhs(g + 0.5 * h * k1g, z + 0.5 * h * k1z);
    const auto [k3g, k3z] = rhs(g + 0.5 * h * k2g, z + 0.5 * h * k2z);
    const auto [k4g, k4z] = rhs(g + h * k3g, z + h * k3z);
    g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
    out[static_cast<std::size_t>(n) + 1] = g;
  }
  return out;
}

// Trapezoidal memory integral with trapezoidal time stepping, using every
// `stride`-th kernel sample (stride 2 gives the step-2h companion solution).
std::vector<complex> trapezoidal_volterra(const KernelTable& k, int n_steps, std::size_t stride) {
  const double h = k.spacing * static_cast<double>(stride);
  const auto f = [&](std::size_t lag) { return k.values[lag * stride]; };
  const std::size_t n = static_cast<std::size_t>(n_steps);

  std::vector<complex> g(n + 1);
  g[0] = 1.0;
  complex force = 0.0;  // F_m = dG/dt at step m
  const complex implicit = 1.0 + 0.25 * h * h * f(0);
  for (std::size_t m = 0; m < n; ++m) {
    complex partial = 0.5 * f(m + 1) * g[0];
    for (std::size_t j = 1; j <= m; ++j) partial += f(m + 1 - j) * g[j];
    partial *= -h;
    g[m + 1] = (g[m] + 0.5 * h * (force + partial)) / implicit;
    force = partial - 0.5 * h * f(0) * g[m + 1];
  }
  return g;
}

std::vector<double> uniform_times(double step, std::size_t count) {
  std::vector<double> t(count);
  for (std::size_t i = 0; i < count; ++i) t[i] = step * static_cast<double>(i);
  return t;
}

void finish_diagnostics(VolterraDiagnostics& d, double tolerance) {
  d.tolerance = tolerance;
  if (std::isnan(d.error_estimate)) return;
  d.within_tolerance = d.error_estimate <= tolerance;
  if (!d.within_tolerance) {
    std::ostringstream os;
    os << "estimated error " << d.error_estimate << " exceeds tolerance " << tolerance
       << "; reduce the step size";
    d.note = os.str();
  }
}

}  // namespace

GTrace volterra_solve(const ReservoirParams& p, double t_max, int n_steps, const VolterraOptions& options) {
  p.validate();
  if (!(t_max > 0.0)) throw PreconditionError("volterra_solve: t_max must be > 0");
  if (n_steps < 10) throw PreconditionError("volterra_solve: n_steps must be >= 10");

  const double h = t_max / n_steps;
  GTrace trace;
  trace.values = rk4_exponential_kernel(p, h, n_steps);
  trace.times = uniform_times(h, trace.values.size());
  trace.times.back() = t_max;
  trace.diagnostics.step = h;

  if (options.estimate_error) {
    double diff = 0.0;
    if (n_steps % 2 == 0) {
      const auto coarse = rk4_exponential_kernel(p, 2.0 * h, n_steps / 2);
      for (std::size_t k = 0; k < coarse.size(); ++k) diff = std::max(diff, std::abs(coarse[k] - trace.values[2 * k]));
      trace.diagnostics.error_estimate = diff / 15.0;
    } else {
      const auto fine = rk4_exponential_kernel(p, 0.5 * h, 2 * n_steps);
      for (std::size_t k = 0; k < trace.values.size(); ++k) diff = std::max(diff, std::abs(fine[2 * k] - trace.values[k]));
      trace.diagnostics.error_estimate = diff * 16.0 / 15.0;
    }
  }
  finish_diagnostics(trace.diagnostics, options.tolerance);
  return trace;
}

GTrace volterra_solve(const KernelTable& table, int n_steps, const VolterraOptions& options) {
  if (!(table.spacing > 0.0)) throw PreconditionError("kernel table spacing must be > 0");
  if (n_steps < 10) throw PreconditionError("volterra_solve: n_steps must be >= 10");
  if (table.values.size() < static_cast<std::size_t>(n_steps) + 1)
    throw PreconditionError("kernel table has " + std::to_string(table.values.size()) + " samples, need " +
                            std::to_string(n_steps + 1));
  if (options.extrapolate && n_steps % 2 != 0)
    throw PreconditionError("Richardson extrapolation needs an even step count");

  const auto fine = trapezoidal_volterra(table, n_steps, 1);
  GTrace trace;
  trace.diagnostics.step = table.spacing;

  const bool need_coarse = options.extrapolate || (options.estimate_error && n_steps % 2 == 0);
  std::vector<complex> coarse;
  if (need_coarse) {
    coarse = trapezoidal_volterra(table, n_steps / 2, 2);
    double diff = 0.0;
    for (std::size_t k = 0; k < coarse.size(); ++k) diff = std::max(diff, std::abs(coarse[k] - fine[2 * k]));
    trace.diagnostics.error_estimate = diff / 3.0;
  } else if (options.estimate_error) {
    trace.diagnostics.note = "error not estimated: odd step count";
  }

  if (options.extrapolate) {
    trace.values.resize(coarse.size());
    for (std::size_t k = 0; k < coarse.size(); ++k) trace.values[k] = (4.0 * fine[2 * k] - coarse[k]) / 3.0;
    trace.values[0] = 1.0;
    trace.times = uniform_times(2.0 * table.spacing, coarse.size());
    trace.diagnostics.step = 2.0 * table.spacing;
  } else {
    trace.values = fine;
    trace.times = uniform_times(table.spacing, fine.size());
  }
  finish_diagnostics(trace.diagnostics, options.tolerance);
  return trace;
}

KernelTable tabulate_kernel(const ReservoirParams& p, double spacing, std::size_t count) {
  p.validate();
  if (!(spacing > 0.0)) throw PreconditionError("kernel spacing must be > 0");
  KernelTable t;
  t.spacing = spacing;
  t.values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) t.values.push_back(kernel(spacing * static_cast<double>(k), p));
  return t;
}

KernelTable read_kernel_table(std::istream& in) {
  std::vector<double> lags;
  KernelTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    double dt = 0.0, re = 0.0, im = 0.0;
    std::string extra;
    if (!(row >> dt >> re >> im) || (row >> extra))
      throw ConfigError("kernel table line " + std::to_string(line_no) + ": expected 'dt re im'");
    lags.push_back(dt);
    table.values.emplace_back(re, im);
  }
  if (lags.size() < 2) throw ConfigError("kernel table needs at least two rows");
  if (std::abs(lags[0]) > 1e-12) throw ConfigError("kernel table must start at dt = 0");
  table.spacing = lags[1] - lags[0];
  if (!(table.spacing > 0.0)) throw ConfigError("kernel table lags must increase");
  for (std::size_t k = 1; k < lags.size(); ++k) {
    const double expected = table.spacing * static_cast<double>(k);
    if (std::abs(lags[k] - expected) > 1e-9 * std::max(1.0, expected))
      throw ConfigError("kernel table is not uniformly spaced at row " + std::to_string(k + 1));
  }
  return table;
}

void write_kernel_table(std::ostream& out, const KernelTable& table) {
  out << "# dt re(f) im(f)\n";
  char buf[96];
  for (std::size_t k = 0; k < table.values.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", table.spacing * static_cast<double>(k),
                  table.values[k].real(), table.values[k].imag());
    out << buf;
  }
}

}  // namespace qbeats
