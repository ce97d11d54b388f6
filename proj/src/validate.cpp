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

#include "qbeats/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qbeats/correlations.hpp"
#include "qbeats/dynamics.hpp"
#include "qbeats/reservoir.hpp"

namespace qbeats {
namespace {

struct Draws {
  std::mt19937_64 rng;
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

  ReservoirParams reservoir() { return {1.0, uniform(0.05, 5.0), uniform(-15.0, 15.0)}; }

  complex amplitude() { return std::polar(std::sqrt(uniform(0.0, 1.0)), uniform(0.0, 2.0 * std::numbers::pi)); }

  InitialState state() {
    const double angle = uniform(0.05, 0.5 * std::numbers::pi - 0.05);
    const double phase = uniform(0.0, 2.0 * std::numbers::pi);
    const bool psi = uniform(0.0, 1.0) < 0.5;
    return psi ? InitialState::psi(std::cos(angle), std::sin(angle), phase)
               : InitialState::phi(std::cos(angle), std::sin(angle), phase);
  }
};

CheckResult finish(std::string name, double dev, double tol, std::string detail = {}) {
  CheckResult r;
  r.name = std::move(name);
  r.max_deviation = dev;
  r.tolerance = tol;
  r.passed = std::isfinite(dev) && dev <= tol;
  r.detail = std::move(detail);
  return r;
}

CheckResult check_g_closed_vs_ode(const ValidationOptions& opt, Draws& draws) {
  constexpr double t_max = 50.0;
  constexpr int n_steps = 50000;
  const ReservoirParams fig_a{1.0, 0.2, 10.0};
  const ReservoirParams fig_b{1.0, 0.2, 9.0};
  std::vector<ReservoirParams> sets{fig_a, fig_b};
  for (int i = 0; i < std::max(1, opt.random_draws / 5); ++i) sets.push_back(draws.reservoir());

  double dev = 0.0;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto& p = sets[k];
    const auto ode = volterra_solve(p, t_max, n_steps);
    const complex kappa = p.kappa();
    const complex d = g_root(p);
    const complex d_coef = (opt.inject_sinh_fault && k == 0) ? g_root(fig_b) : d;
    for (std::size_t i = 0; i < ode.times.size(); i += 10) {
      const double t = ode.times[i];
      const complex closed = t == 0.0 ? complex{1.0} : detail::g_from_root(t, kappa, d, d_coef);
      dev = std::max(dev, std::abs(closed - ode.values[i]));
    }
  }
  std::ostringstream detail;
  detail << sets.size() << " parameter sets, t in [0, 50]";
  if (opt.inject_sinh_fault) detail << ", sinh fault injected";
  return finish("G closed form vs ODE Volterra", dev, 1e-5, detail.str());
}

CheckResult check_ode_vs_quadrature() {
  constexpr double t_max = 5.0;
  constexpr double h = 1e-3;
  constexpr int n = 5000;
  double dev = 0.0;
  VolterraOptions quad_opt;
  quad_opt.extrapolate = true;
  for (const ReservoirParams& p : {ReservoirParams{1.0, 0.2, 2.0}, ReservoirParams{1.0, 5.0, 0.0}}) {
    const auto ode = volterra_solve(p, t_max, n);
    const auto quad = volterra_solve(tabulate_kernel(p, h, n + 1), n, quad_opt);
    for (std::size_t i = 0; i < quad.times.size(); ++i) {
      const auto j = static_cast<std::size_t>(std::lround(quad.times[i] / h));
      dev = std::max(dev, std::abs(quad.values[i] - ode.values[j]));
    }
  }
  return finish("ODE Volterra vs quadrature Volterra", dev, 1e-8, "t in [0, 5], h = 1e-3, Richardson");
}

CheckResult check_kraus(const ValidationOptions& opt, Draws& draws) {
  double dev = 0.0;
  for (int i = 0; i < opt.random_draws; ++i) {
    const auto s = draws.state();
    const complex ga = draws.amplitude();
    const complex gb = draws.amplitude();
    dev = std::max(dev, max_abs_diff(evolve(s, ga, gb).rho.matrix(), apply_local_maps(s.projector(), ga, gb)));
  }
  return finish("X-state elements vs local Kraus maps", dev, 1e-12);
}

CheckResult check_concurrence(const ValidationOptions& opt, Draws& draws) {
  double dev = 0.0;
  for (int i = 0; i < opt.random_draws; ++i) {
    const auto s = draws.state();
    const complex ga = draws.amplitude();
    const complex gb = draws.amplitude();
    const double closed =
        s.family == BellFamily::Psi ? concurrence_psi(s, ga, gb) : concurrence_phi(s, ga, gb);
    dev = std::max(dev, std::abs(closed - concurrence(evolve(s, ga, gb).rho)));
  }
  return finish("closed-form vs general concurrence", dev, 1e-10);
}

CheckResult check_discord(const ValidationOptions& opt, Draws& draws) {
  constexpr double report_above = 5e-3;
  double dev = 0.0;
  int flagged = 0;
  const int n = std::max(1, opt.random_draws / 2);
  for (int i = 0; i < n; ++i) {
    const auto s = draws.state();
    const auto st = evolve(s, draws.amplitude(), draws.amplitude());
    const double d = std::abs(discord_analytic(st.rho, s.family) - discord_variational(st.rho));
    if (d > report_above) ++flagged;
    dev = std::max(dev, d);
  }
  std::ostringstream detail;
  detail << n << " states, " << flagged << " above " << report_above;
  return finish("analytic vs variational discord", dev, 2e-3, detail.str());
}

}  // namespace

bool ValidationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport validate(const ValidationOptions& options) {
  Draws draws{std::mt19937_64(options.seed)};
  ValidationReport report;
  report.checks.push_back(check_g_closed_vs_ode(options, draws));
  report.checks.push_back(check_ode_vs_quadrature());
  report.checks.push_back(check_kraus(options, draws));
  report.checks.push_back(check_concurrence(options, draws));
  report.checks.push_back(check_discord(options, draws));
  return report;
}

}  // namespace qbeats
