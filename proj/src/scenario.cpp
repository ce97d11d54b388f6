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

#include "qbeats/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "qbeats/error.hpp"

namespace qbeats {
namespace {

constexpr double kVolterraMaxStep = 1e-3;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
    throw ConfigError("key '" + key + "': expected a number, got '" + v + "'");
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw ConfigError("key '" + key + "': expected an integer, got '" + v + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("key '" + key + "': expected true/false, got '" + v + "'");
}

MeasureSet parse_measures(const std::string& v) {
  MeasureSet m;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    if (item == "concurrence")
      m.concurrence = true;
    else if (item == "discord")
      m.discord = true;
    else if (item == "mutual_info")
      m.mutual_info = true;
    else if (item == "classical")
      m.classical = true;
    else
      throw ConfigError("unknown measure '" + item + "'");
  }
  return m;
}

std::string measures_string(const MeasureSet& m) {
  std::string s;
  const auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!s.empty()) s += ',';
    s += name;
  };
  add(m.concurrence, "concurrence");
  add(m.discord, "discord");
  add(m.mutual_info, "mutual_info");
  add(m.classical, "classical");
  return s;
}

const char* to_string(DiscordChoice c) {
  switch (c) {
    case DiscordChoice::Analytic: return "analytic";
    case DiscordChoice::Variational: return "variational";
    case DiscordChoice::Both: return "both";
  }
  return "analytic";
}

const char* to_string(GMethod g) {
  switch (g) {
    case GMethod::Closed: return "closed";
    case GMethod::Volterra: return "volterra";
    case GMethod::Both: return "both";
  }
  return "closed";
}

template <class F>
auto with_context(const std::string& name, F&& body) {
  const std::string ctx = "scenario '" + name + "': ";
  try {
    return body();
  } catch (const ConfigError& e) {
    throw ConfigError(ctx + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(ctx + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(ctx + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(ctx + e.what());
  }
}

ScenarioConfig make_config(std::string name, BellFamily family, std::optional<ReservoirParams> a,
                           std::optional<ReservoirParams> b, MeasureSet measures, double t_max, int n_steps) {
  ScenarioConfig c;
  c.name = std::move(name);
  c.initial = InitialState::bell(family);
  c.reservoir_a = a;
  c.reservoir_b = b;
  c.measures = measures;
  c.t_max = t_max;
  c.n_steps = n_steps;
  return c;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

const char* family_tag(BellFamily f) { return f == BellFamily::Psi ? "psi" : "phi"; }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ScenarioConfig::validate() const {
  if (!(std::isfinite(t_max) && t_max > 0.0)) throw ConfigError("t_max must be > 0");
  if (n_steps < 2) throw ConfigError("n_steps must be >= 2");
  if (!measures.any()) throw ConfigError("no measures selected");
  if (grid.n_theta < 2 || grid.n_phi < 1) throw ConfigError("measurement grid too small");
  try {
    initial.validate();
    if (reservoir_a) reservoir_a->validate();
    if (reservoir_b) reservoir_b->validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

ScenarioConfig parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    kv[trim(std::string_view(line).substr(0, eq))] = trim(std::string_view(line).substr(eq + 1));
  }

  ScenarioConfig c;
  ReservoirParams ra{1.0, 0.2, 0.0};
  ReservoirParams rb{1.0, 0.2, 0.0};
  bool coupled_a = true, coupled_b = true;
  BellFamily family = BellFamily::Phi;
  double amp1 = std::sqrt(0.5), phase = 0.0;
  std::optional<double> amp2;

  for (const auto& [key, value] : kv) {
    if (key == "name") c.name = value;
    else if (key == "state") {
      if (value == "psi") family = BellFamily::Psi;
      else if (value == "phi") family = BellFamily::Phi;
      else throw ConfigError("state must be psi or phi, got '" + value + "'");
    } else if (key == "amp1") amp1 = parse_double(key, value);
    else if (key == "amp2") amp2 = parse_double(key, value);
    else if (key == "phase") phase = parse_double(key, value);
    else if (key == "lambda_a") ra.lambda = parse_double(key, value);
    else if (key == "delta_a") ra.delta = parse_double(key, value);
    else if (key == "coupled_a") coupled_a = parse_bool(key, value);
    else if (key == "lambda_b") rb.lambda = parse_double(key, value);
    else if (key == "delta_b") rb.delta = parse_double(key, value);
    else if (key == "coupled_b") coupled_b = parse_bool(key, value);
    else if (key == "t_max") c.t_max = parse_double(key, value);
    else if (key == "n_steps") c.n_steps = parse_int(key, value);
    else if (key == "measures") c.measures = parse_measures(value);
    else if (key == "discord_method") {
      if (value == "analytic") c.discord_method = DiscordChoice::Analytic;
      else if (value == "variational") c.discord_method = DiscordChoice::Variational;
      else if (value == "both") c.discord_method = DiscordChoice::Both;
      else throw ConfigError("discord_method must be analytic, variational or both");
    } else if (key == "g_method") {
      if (value == "closed") c.g_method = GMethod::Closed;
      else if (value == "volterra") c.g_method = GMethod::Volterra;
      else if (value == "both") c.g_method = GMethod::Both;
      else throw ConfigError("g_method must be closed, volterra or both");
    } else if (key == "grid") {
      const auto x = value.find('x');
      if (x == std::string::npos) throw ConfigError("grid must look like 64x64");
      c.grid.n_theta = parse_int(key, value.substr(0, x));
      c.grid.n_phi = parse_int(key, value.substr(x + 1));
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }

  if (!amp2) {
    if (amp1 < 0.0 || amp1 > 1.0) throw ConfigError("amp1 must lie in [0, 1]");
    amp2 = std::sqrt(std::max(0.0, 1.0 - amp1 * amp1));
  }
  c.initial = InitialState{family, amp1, *amp2, phase};
  if (coupled_a) c.reservoir_a = ra;
  if (coupled_b) c.reservoir_b = rb;
  c.validate();
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

std::vector<std::pair<std::string, std::string>> config_fields(const ScenarioConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> f;
  f.emplace_back("name", cfg.name);
  f.emplace_back("state", family_tag(cfg.initial.family));
  f.emplace_back("amp1", format_double(cfg.initial.amp1));
  f.emplace_back("amp2", format_double(cfg.initial.amp2));
  f.emplace_back("phase", format_double(cfg.initial.phase));
  const auto reservoir = [&](const std::optional<ReservoirParams>& r, const char* suffix) {
    const std::string s(suffix);
    f.emplace_back("coupled_" + s, r ? "true" : "false");
    if (r) {
      f.emplace_back("lambda_" + s, format_double(r->lambda));
      f.emplace_back("delta_" + s, format_double(r->delta));
    }
  };
  reservoir(cfg.reservoir_a, "a");
  reservoir(cfg.reservoir_b, "b");
  f.emplace_back("t_max", format_double(cfg.t_max));
  f.emplace_back("n_steps", std::to_string(cfg.n_steps));
  f.emplace_back("measures", measures_string(cfg.measures));
  f.emplace_back("discord_method", to_string(cfg.discord_method));
  f.emplace_back("g_method", to_string(cfg.g_method));
  f.emplace_back("grid", std::to_string(cfg.grid.n_theta) + "x" + std::to_string(cfg.grid.n_phi));
  return f;
}

std::vector<double> scenario_times(const ScenarioConfig& cfg) {
  std::vector<double> t(static_cast<std::size_t>(cfg.n_steps));
  const double n = static_cast<double>(cfg.n_steps - 1);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = cfg.t_max * static_cast<double>(i) / n;
  t.back() = cfg.t_max;
  return t;
}

std::vector<complex> scenario_amplitudes(const std::optional<ReservoirParams>& p, const std::vector<double>& times,
                                         GMethod method) {
  std::vector<complex> g(times.size(), complex{1.0, 0.0});
  if (!p || times.empty()) return g;
  if (method != GMethod::Volterra) {
    for (std::size_t i = 0; i < times.size(); ++i) g[i] = g_closed_form(times[i], *p);
    return g;
  }
  if (times.size() < 2) return g;
  const std::size_t intervals = times.size() - 1;
  const double dt = times.back() / static_cast<double>(intervals);
  std::size_t sub = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(dt / kVolterraMaxStep - 1e-9)));
  while (intervals * sub < 10) ++sub;
  const auto trace = volterra_solve(*p, times.back(), static_cast<int>(intervals * sub));
  if (!trace.diagnostics.within_tolerance) throw NumericalError("Volterra solver: " + trace.diagnostics.note);
  for (std::size_t i = 0; i < times.size(); ++i) g[i] = trace.values[i * sub];
  return g;
}

CorrelationTrace run_scenario(const ScenarioConfig& cfg) {
  return with_context(cfg.name, [&] {
    cfg.validate();
    CorrelationTrace trace;
    trace.times = scenario_times(cfg);
    for (auto& kv : config_fields(cfg)) trace.set_meta(kv.first, kv.second);
    trace.set_meta("time_unit", "t column is gamma0 * t");

    const auto& times = trace.times;
    const std::size_t n = times.size();
    const GMethod primary = cfg.g_method == GMethod::Volterra ? GMethod::Volterra : GMethod::Closed;
    const auto g_a = scenario_amplitudes(cfg.reservoir_a, times, primary);
    const auto g_b = scenario_amplitudes(cfg.reservoir_b, times, primary);

    const bool want_d = cfg.measures.discord || cfg.measures.classical;
    const bool want_i = want_d || cfg.measures.mutual_info;
    const bool analytic = want_d && cfg.discord_method != DiscordChoice::Variational;
    const bool variational = want_d && cfg.discord_method != DiscordChoice::Analytic;

    std::vector<double> c(n), d(n), mi(n), q(n), ga2(n), gb2(n), d_var(n), q_var(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto state = evolve(cfg.initial, g_a[i], g_b[i], times[i]);
      ga2[i] = std::norm(g_a[i]);
      gb2[i] = std::norm(g_b[i]);
      if (cfg.measures.concurrence)
        c[i] = cfg.initial.family == BellFamily::Psi ? concurrence_psi(cfg.initial, g_a[i], g_b[i])
                                                     : concurrence_phi(cfg.initial, g_a[i], g_b[i]);
      if (want_i) mi[i] = mutual_information(state.rho);
      if (analytic) {
        d[i] = std::min(mi[i], discord_analytic(state.rho, cfg.initial.family));
        q[i] = mi[i] - d[i];
      }
      if (variational) {
        q_var[i] = std::min(mi[i], classical_correlation(state.rho, cfg.grid).value);
        d_var[i] = mi[i] - q_var[i];
      }
    }
    if (!analytic) {
      d = d_var;
      q = q_var;
    }

    if (cfg.measures.concurrence) trace.add_column("C", std::move(c));
    if (cfg.measures.discord) trace.add_column("D", d);
    if (cfg.measures.mutual_info) trace.add_column("I", std::move(mi));
    if (cfg.measures.classical) trace.add_column("Q", q);
    trace.add_column("gA2", std::move(ga2));
    trace.add_column("gB2", std::move(gb2));

    if (cfg.discord_method == DiscordChoice::Both && want_d) {
      double dev = 0.0;
      for (std::size_t i = 0; i < n; ++i) dev = std::max(dev, std::abs(d[i] - d_var[i]));
      if (cfg.measures.discord) trace.add_column("D_var", std::move(d_var));
      if (cfg.measures.classical) trace.add_column("Q_var", std::move(q_var));
      trace.set_meta("max_dev_D", format_double(dev));
    }
    if (cfg.g_method == GMethod::Both) {
      const auto va = scenario_amplitudes(cfg.reservoir_a, times, GMethod::Volterra);
      const auto vb = scenario_amplitudes(cfg.reservoir_b, times, GMethod::Volterra);
      std::vector<double> va2(n), vb2(n);
      double dev = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        va2[i] = std::norm(va[i]);
        vb2[i] = std::norm(vb[i]);
        dev = std::max({dev, std::abs(va[i] - g_a[i]), std::abs(vb[i] - g_b[i])});
      }
      trace.add_column("gA2_volterra", std::move(va2));
      trace.add_column("gB2_volterra", std::move(vb2));
      trace.set_meta("max_dev_G", format_double(dev));
    }
    return trace;
  });
}

std::vector<ScenarioConfig> figure_preset(int id) {
  constexpr double lambda = 0.2;
  const ReservoirParams res_a{1.0, lambda, 50.0 * lambda};
  const ReservoirParams res_b{1.0, lambda, 45.0 * lambda};
  const MeasureSet conc{true, false, false, false};
  const MeasureSet disc{false, true, false, false};
  // Long enough for about six beat periods at |delta_a - delta_b| = 1.
  constexpr double beat_t_max = 40.0;
  constexpr int beat_steps = 4001;
  constexpr double sweep_t_max = 1500.0;
  constexpr int sweep_steps = 15001;

  std::vector<ScenarioConfig> out;
  switch (id) {
    case 1:
    case 3:
      for (auto f : {BellFamily::Psi, BellFamily::Phi})
        out.push_back(make_config("fig" + std::to_string(id) + "_" + family_tag(f), f, res_a, res_b,
                                  id == 1 ? conc : disc, beat_t_max, beat_steps));
      break;
    case 2:
      for (const auto& [tag, measures] : {std::pair{"concurrence", conc}, std::pair{"discord", disc}}) {
        out.push_back(make_config(std::string("fig2_") + tag + "_a_only", BellFamily::Phi, res_a, std::nullopt,
                                  measures, beat_t_max, beat_steps));
        out.push_back(make_config(std::string("fig2_") + tag + "_b_only", BellFamily::Phi, std::nullopt, res_b,
                                  measures, beat_t_max, beat_steps));
      }
      break;
    case 4:
      for (auto f : {BellFamily::Phi, BellFamily::Psi})
        for (double delta : {0.0, 2.0, 5.0, 10.0}) {
          const ReservoirParams r{1.0, lambda, delta};
          out.push_back(make_config(std::string("fig4_") + family_tag(f) + "_delta_" + short_number(delta), f, r,
                                    r, disc, sweep_t_max, sweep_steps));
        }
      break;
    case 5:
      for (auto f : {BellFamily::Phi, BellFamily::Psi})
        for (double width : {1.0, 0.2, 0.05}) {
          const ReservoirParams r{1.0, width, 2.0};
          out.push_back(make_config(std::string("fig5_") + family_tag(f) + "_lambda_" + short_number(width), f, r,
                                    r, disc, sweep_t_max, sweep_steps));
        }
      break;
    default:
      throw ConfigError("unknown figure id " + std::to_string(id) + " (expected 1-5)");
  }
  return out;
}

}  // namespace qbeats
