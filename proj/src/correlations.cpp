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

#include "qbeats/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "qbeats/error.hpp"

namespace qbeats {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZeroWeight = 1e-14;
constexpr double kStructureTol = 1e-14;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Reports values in (-1e-6, 0) as 0; more negative values are logged and clamped.
double clamp_discord(double d, const char* what) {
  if (d >= 0.0) return d;
  if (d < -1e-6) std::clog << "qbeats: warning: " << what << " discord " << d << " clamped to 0\n";
  return 0.0;
}

// Unnormalized conditional state of A after outcome `outcome` on B.
Matrix2 conditional_state(const Matrix4& rho, const Matrix2& projector) {
  Matrix2 m;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t ap = 0; ap < 2; ++ap)
      for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t bp = 0; bp < 2; ++bp) m(a, ap) += rho(2 * a + b, 2 * ap + bp) * projector(bp, b);
  return m;
}

double conditional_entropy(const Matrix4& rho, const MeasurementBasis& basis) {
  double h = 0.0;
  for (int k = 0; k < 2; ++k) {
    Matrix2 m = conditional_state(rho, basis.projector(k));
    const double p = m.trace().real();
    if (p < kZeroWeight) continue;
    m *= 1.0 / p;
    h += p * von_neumann_entropy(m);
  }
  return h;
}

template <class F>
std::pair<double, double> golden_section_min(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

double wrap_phi(double phi) {
  phi = std::fmod(phi, 2.0 * kPi);
  return phi < 0.0 ? phi + 2.0 * kPi : phi;
}

bool off_pattern_zero(const Matrix4& m, const bool (&allowed)[4][4]) {
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (!allowed[i][j] && std::abs(m(i, j)) > kStructureTol) return false;
  return true;
}

}  // namespace

Matrix2 MeasurementBasis::projector(int outcome) const {
  const std::array<complex, 2> v{std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
  const Matrix2 p0 = Matrix2::outer(v);
  return outcome == 0 ? p0 : Matrix2::identity() - p0;
}

Matrix4 spin_flip(const Matrix4& rho) {
  // sigma_y x sigma_y maps |i> to s_i |3 - i> with s = (-1, 1, 1, -1).
  constexpr std::array<double, 4> s{-1.0, 1.0, 1.0, -1.0};
  Matrix4 out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) out(i, j) = s[i] * s[j] * std::conj(rho(3 - i, 3 - j));
  return out;
}

double concurrence(const DensityMatrix4& rho) {
  const auto es = hermitian_eigensystem(rho.matrix());
  Matrix4 w;
  for (std::size_t k = 0; k < 4; ++k) {
    double mu = es.values[k];
    if (mu < -1e-10) throw NumericalError("concurrence: density matrix eigenvalue " + std::to_string(mu));
    const double root = std::sqrt(std::max(0.0, mu));
    for (std::size_t i = 0; i < 4; ++i) w(i, k) = root * es.vectors(i, k);
  }
  // tau = W^T (sigma_y x sigma_y) W
  constexpr std::array<double, 4> s{-1.0, 1.0, 1.0, -1.0};
  Matrix4 tau;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      complex acc = 0.0;
      for (std::size_t a = 0; a < 4; ++a) acc += w(a, i) * s[a] * w(3 - a, j);
      tau(i, j) = acc;
    }
  const auto l = singular_values(tau);
  return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

double concurrence_psi(const InitialState& s, complex g_a, complex g_b) {
  if (s.family != BellFamily::Psi) throw PreconditionError("concurrence_psi called with a Phi state");
  const double ab = std::abs(g_a * g_b);
  const double decay = std::sqrt((1.0 - std::norm(g_a)) * (1.0 - std::norm(g_b)));
  return std::max(0.0, 2.0 * ab * std::abs(s.amp1 * s.amp2) - 2.0 * s.amp2 * s.amp2 * ab * decay);
}

double concurrence_phi(const InitialState& s, complex g_a, complex g_b) {
  if (s.family != BellFamily::Phi) throw PreconditionError("concurrence_phi called with a Psi state");
  return 2.0 * std::abs(s.amp1 * s.amp2 * g_a * g_b);
}

bool psi_sudden_death(const InitialState& s, complex g_a, complex g_b) {
  const double decay = std::sqrt((1.0 - std::norm(g_a)) * (1.0 - std::norm(g_b)));
  return std::abs(s.amp1) - std::abs(s.amp2) * decay < 0.0;
}

double mutual_information(const DensityMatrix4& rho) {
  const double i = von_neumann_entropy(partial_trace(rho, Subsystem::A)) +
                   von_neumann_entropy(partial_trace(rho, Subsystem::B)) - von_neumann_entropy(rho.matrix());
  return std::max(0.0, i);
}

double measured_information(const DensityMatrix4& rho, const MeasurementBasis& basis) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::A)) - conditional_entropy(rho.matrix(), basis);
}

ClassicalCorrelation classical_correlation(const DensityMatrix4& rho, const GridSpec& grid) {
  if (grid.n_theta < 2 || grid.n_phi < 1) throw PreconditionError("measurement grid too small");
  const Matrix4& m = rho.matrix();
  const double s_a = von_neumann_entropy(partial_trace(rho, Subsystem::A));
  const auto cond = [&](double theta, double phi) { return conditional_entropy(m, {theta, phi}); };

  const double d_theta = kPi / (grid.n_theta - 1);
  const double d_phi = 2.0 * kPi / grid.n_phi;
  MeasurementBasis best{0.0, 0.0};
  double best_h = cond(0.0, 0.0);
  for (int i = 0; i < grid.n_theta; ++i) {
    const double theta = i * d_theta;
    for (int j = 0; j < grid.n_phi; ++j) {
      const double phi = j * d_phi;
      const double h = cond(theta, phi);
      if (h < best_h) {
        best_h = h;
        best = {theta, phi};
      }
    }
  }

  MeasurementBasis x = best;
  for (int round = 0; round < grid.refine_rounds; ++round) {
    const auto [theta, h_theta] = golden_section_min([&](double th) { return cond(th, x.phi); },
                                                     std::max(0.0, x.theta - d_theta),
                                                     std::min(kPi, x.theta + d_theta), grid.angle_tol);
    x.theta = theta;
    const auto [phi, h_phi] = golden_section_min([&](double ph) { return cond(x.theta, ph); }, x.phi - d_phi,
                                                 x.phi + d_phi, grid.angle_tol);
    x.phi = wrap_phi(phi);
    if (h_phi < best_h) {
      best_h = h_phi;
      best = x;
    }
  }
  return {std::max(0.0, s_a - best_h), best};
}

double discord_variational(const DensityMatrix4& rho, const GridSpec& grid) {
  return clamp_discord(mutual_information(rho) - classical_correlation(rho, grid).value, "variational");
}

double discord_psi_analytic(const DensityMatrix4& rho) {
  static constexpr bool pattern[4][4] = {
      {true, false, false, true}, {false, true, false, false}, {false, false, true, false}, {true, false, false, true}};
  const Matrix4& m = rho.matrix();
  if (!off_pattern_zero(m, pattern)) throw ValidationError("state does not have the Psi-family X structure");

  const double r11 = m(0, 0).real(), r22 = m(1, 1).real(), r33 = m(2, 2).real(), r44 = m(3, 3).real();
  const double c14 = std::norm(m(0, 3));

  const double s_b = -(xlog2x(r11 + r33) + xlog2x(r22 + r44));
  const double root = std::sqrt((r11 - r44) * (r11 - r44) + 4.0 * c14);
  const std::array<double, 4> lambdas{0.5 * (r11 + r44 + root), std::max(0.0, 0.5 * (r11 + r44 - root)), r22, r33};
  const double s_ab = shannon_entropy(lambdas);

  const double w0 = r22 + r44;
  const double w1 = r11 + r33;
  const double eta = w0 > 0.0 ? std::abs(r22 - r44) / w0 : 0.0;
  const double eta_p = w1 > 0.0 ? std::abs(r11 - r33) / w1 : 0.0;
  const double s1 = w0 * binary_entropy_of_bias(eta) + w1 * binary_entropy_of_bias(eta_p);
  const double eps = std::sqrt((r11 + r22 - r33 - r44) * (r11 + r22 - r33 - r44) + 4.0 * c14);
  const double s2 = binary_entropy_of_bias(std::min(1.0, eps));

  return clamp_discord(s_b - s_ab + std::min(s1, s2), "analytic psi");
}

double discord_phi_analytic(const DensityMatrix4& rho) {
  static constexpr bool pattern[4][4] = {
      {true, false, false, false}, {false, true, true, false}, {false, true, true, false}, {false, false, false, false}};
  const Matrix4& m = rho.matrix();
  if (!off_pattern_zero(m, pattern)) throw ValidationError("state does not have the Phi-family X structure");

  const double r11 = m(0, 0).real(), r22 = m(1, 1).real(), r33 = m(2, 2).real();
  const double c23 = std::norm(m(1, 2));
  if (std::abs(r22 * r33 - c23) > 1e-12)
    throw ValidationError("Phi-family |01>,|10> block is not rank one");

  const double s_b = -(xlog2x(r11 + r33) + xlog2x(r22));
  const double w = r11 + r33;
  const double big_lambda = w > 0.0 ? std::abs(r11 - r33) / w : 0.0;
  const double s1 = w * binary_entropy_of_bias(big_lambda);
  const double lp = std::sqrt((r11 + r22 - r33) * (r11 + r22 - r33) + 4.0 * c23);
  const double s2 = binary_entropy_of_bias(std::min(1.0, lp));

  return clamp_discord(s_b + xlog2x(r11) + xlog2x(r22 + r33) + std::min(s1, s2), "analytic phi");
}

double discord_analytic(const DensityMatrix4& rho, BellFamily family) {
  return family == BellFamily::Psi ? discord_psi_analytic(rho) : discord_phi_analytic(rho);
}

CorrelationValues correlations(const EvolvedState& state, const InitialState& initial, DiscordMethod method,
                               const GridSpec& grid) {
  CorrelationValues v;
  v.concurrence = initial.family == BellFamily::Psi ? concurrence_psi(initial, state.g_a, state.g_b)
                                                    : concurrence_phi(initial, state.g_a, state.g_b);
  v.mutual_info = mutual_information(state.rho);
  v.discord_method = method;
  if (method == DiscordMethod::Analytic) {
    v.discord = discord_analytic(state.rho, initial.family);
    v.classical_corr = std::max(0.0, v.mutual_info - v.discord);
    v.discord = v.mutual_info - v.classical_corr;
  } else {
    v.classical_corr = std::min(v.mutual_info, classical_correlation(state.rho, grid).value);
    v.discord = v.mutual_info - v.classical_corr;
  }
  return v;
}

}  // namespace qbeats
