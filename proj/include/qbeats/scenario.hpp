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

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qbeats/analysis.hpp"
#include "qbeats/correlations.hpp"
#include "qbeats/dynamics.hpp"
#include "qbeats/reservoir.hpp"

namespace qbeats {

struct MeasureSet {
  bool concurrence = false;
  bool discord = false;
  bool mutual_info = false;
  bool classical = false;

  bool any() const { return concurrence || discord || mutual_info || classical; }
};

enum class DiscordChoice { Analytic, Variational, Both };
enum class GMethod { Closed, Volterra, Both };

/// One simulation run. An empty reservoir means the qubit is isolated
/// (G == 1 at all times).
struct ScenarioConfig {
  std::string name = "scenario";
  std::optional<ReservoirParams> reservoir_a;
  std::optional<ReservoirParams> reservoir_b;
  InitialState initial = InitialState::bell(BellFamily::Phi);
  double t_max = 50.0;
  int n_steps = 5001;  // number of samples, including t = 0 and t = t_max
  MeasureSet measures{true, true, true, true};
  DiscordChoice discord_method = DiscordChoice::Analytic;
  GMethod g_method = GMethod::Closed;
  GridSpec grid;

  /// Throws ConfigError / ValidationError on an invalid configuration.
  void validate() const;
};

/// Flat "key = value" text; '#' starts a comment. Keys:
///   name, state (psi|phi), amp1, amp2, phase,
///   lambda_a, delta_a, coupled_a, lambda_b, delta_b, coupled_b,
///   t_max, n_steps, measures (comma list of concurrence, discord,
///   mutual_info, classical), discord_method (analytic|variational|both),
///   g_method (closed|volterra|both), grid (e.g. 64x64).
/// amp2 defaults to sqrt(1 - amp1^2). Unknown keys are rejected.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig load_config(const std::string& path);

/// Inverse of parse_config; full precision.
std::vector<std::pair<std::string, std::string>> config_fields(const ScenarioConfig& cfg);

/// Time grid of a scenario: n_steps samples, t_0 = 0, t_last = t_max.
std::vector<double> scenario_times(const ScenarioConfig& cfg);

/// Runs reservoir -> dynamics -> correlations on the scenario grid.
/// Columns: t, then C, D, I, Q (as selected), gA2, gB2; extra columns
/// D_var/Q_var (discord_method = both) and gA2_volterra/gB2_volterra
/// (g_method = both) with max_dev_* metadata. Errors carry the scenario
/// name.
CorrelationTrace run_scenario(const ScenarioConfig& cfg);

/// Survival amplitudes on the scenario grid for one qubit.
std::vector<complex> scenario_amplitudes(const std::optional<ReservoirParams>& p, const std::vector<double>& times,
                                         GMethod method);

/// Parameter sets of figures 1-5. Sweep values of figures 4 and 5 are
/// representative choices (detunings 0, 2, 5, 10; widths 1.0, 0.2, 0.05).
/// Throws ConfigError for an unknown id.
std::vector<ScenarioConfig> figure_preset(int id);

/// CSV: '#'-prefixed "key = value" metadata lines, a header row, then one
/// row per sample with 17 significant digits.
void write_trace_csv(std::ostream& out, const CorrelationTrace& trace);
CorrelationTrace read_trace_csv(std::istream& in);
/// Writes via a temporary file and rename.
void write_trace_file(const std::string& path, const CorrelationTrace& trace);

std::string format_double(double v);

}  // namespace qbeats
