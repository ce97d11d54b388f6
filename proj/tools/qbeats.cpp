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

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qbeats/analysis.hpp"
#include "qbeats/error.hpp"
#include "qbeats/scenario.hpp"
#include "qbeats/validate.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kNumerical = 3 };

struct Overrides {
  std::optional<int> steps;
  std::optional<double> t_max;

  void apply(qbeats::ScenarioConfig& cfg) const {
    if (steps) cfg.n_steps = *steps;
    if (t_max) cfg.t_max = *t_max;
  }
};

void emit(const qbeats::CorrelationTrace& trace, const std::string& name, const std::string& out_dir) {
  if (out_dir.empty()) {
    qbeats::write_trace_csv(std::cout, trace);
    return;
  }
  const auto path = (std::filesystem::path(out_dir) / (name + ".csv")).string();
  qbeats::write_trace_file(path, trace);
  std::cout << path << '\n';
}

std::string main_column(const qbeats::ScenarioConfig& cfg) {
  return cfg.measures.concurrence ? "C" : cfg.measures.discord ? "D" : cfg.measures.mutual_info ? "I" : "Q";
}

std::vector<std::pair<std::string, std::string>> attach_beat(qbeats::CorrelationTrace& trace, const std::string& column,
                                                             const qbeats::BeatThresholds& thresholds = {}) {
  auto fields = qbeats::beat_report_fields(qbeats::beat_analysis(trace, column, thresholds));
  for (const auto& [k, v] : fields) trace.set_meta(k, v);
  return fields;
}

void attach_decay(qbeats::CorrelationTrace& trace, const std::string& column) {
  const auto s = qbeats::decay_summary(trace, column);
  trace.set_meta("decay.column", column);
  trace.set_meta("decay.t_half", qbeats::format_double(s.t_half));
  trace.set_meta("decay.final_value", qbeats::format_double(s.final_value));
}

int run_validate(bool inject, std::uint64_t seed, int draws) {
  qbeats::ValidationOptions opt;
  opt.inject_sinh_fault = inject;
  opt.seed = seed;
  opt.random_draws = draws;
  const auto report = qbeats::validate(opt);
  for (const auto& c : report.checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  max_dev=" << qbeats::format_double(c.max_deviation)
              << " tol=" << qbeats::format_double(c.tolerance);
    if (!c.detail.empty()) std::cout << "  (" << c.detail << ')';
    std::cout << '\n';
  }
  return report.all_passed() ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit dynamics in detuned Lorentzian reservoirs"};
  app.require_subcommand(1);

  std::string out_dir;
  Overrides overrides;

  auto* evolve = app.add_subcommand("evolve", "Run one scenario from a config file");
  std::string config_path;
  evolve->add_option("config", config_path, "Scenario config file")->required();

  auto* figure = app.add_subcommand("figure", "Regenerate the traces of a figure (1-5)");
  int figure_id = 0;
  figure->add_option("id", figure_id, "Figure number")->required()->check(CLI::Range(1, 5));

  auto* beat = app.add_subcommand("beat", "Run a scenario and classify its oscillation envelope");
  std::string beat_config;
  std::string column;
  beat->add_option("config", beat_config, "Scenario config file")->required();
  qbeats::BeatThresholds thresholds;
  beat->add_option("--column", column, "Column to analyse (default: first selected measure)");
  beat->add_option("--beat-threshold", thresholds.beat, "Modulation depth above which a beat is declared");
  beat->add_option("--plain-threshold", thresholds.plain, "Modulation depth below which the oscillation is plain");

  for (auto* sub : {evolve, figure, beat}) {
    sub->add_option("--out", out_dir, "Output directory (evolve: default stdout; figure: default .)");
    sub->add_option("--steps", overrides.steps, "Override the number of samples")->check(CLI::Range(2, 100000000));
    sub->add_option("--tmax", overrides.t_max, "Override the final time (units of 1/gamma0)");
  }

  auto* val = app.add_subcommand("validate", "Cross-check closed forms against independent routes");
  bool inject = false;
  std::uint64_t seed = qbeats::ValidationOptions{}.seed;
  int draws = qbeats::ValidationOptions{}.random_draws;
  val->add_flag("--inject-fault", inject, "Corrupt the closed-form G (the check must then fail)");
  val->add_option("--seed", seed, "Random seed");
  val->add_option("--draws", draws, "Random draws per check")->check(CLI::Range(1, 100000));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*val) return run_validate(inject, seed, draws);

    if (*evolve) {
      auto cfg = qbeats::load_config(config_path);
      overrides.apply(cfg);
      emit(qbeats::run_scenario(cfg), cfg.name, out_dir);
      return kOk;
    }

    if (*beat) {
      auto cfg = qbeats::load_config(beat_config);
      overrides.apply(cfg);
      auto trace = qbeats::run_scenario(cfg);
      if (!(thresholds.plain >= 0.0 && thresholds.plain <= thresholds.beat && thresholds.beat <= 1.0))
        throw qbeats::ConfigError("thresholds must satisfy 0 <= plain <= beat <= 1");
      const auto fields = attach_beat(trace, column.empty() ? main_column(cfg) : column, thresholds);
      if (!out_dir.empty()) emit(trace, cfg.name, out_dir);
      for (const auto& [k, v] : fields) std::cout << k << " = " << v << '\n';
      return kOk;
    }

    if (*figure) {
      for (auto cfg : qbeats::figure_preset(figure_id)) {
        overrides.apply(cfg);
        auto trace = qbeats::run_scenario(cfg);
        const auto col = main_column(cfg);
        if (figure_id <= 3)
          attach_beat(trace, col);
        else
          attach_decay(trace, col);
        emit(trace, cfg.name, out_dir.empty() ? "." : out_dir);
      }
      return kOk;
    }
  } catch (const qbeats::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const qbeats::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const qbeats::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
