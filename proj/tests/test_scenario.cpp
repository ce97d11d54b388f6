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

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qbeats/error.hpp"
#include "qbeats/scenario.hpp"
#include "qbeats/validate.hpp"

using namespace qbeats;

namespace {

ScenarioConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

std::string to_csv(const CorrelationTrace& t) {
  std::ostringstream out;
  write_trace_csv(out, t);
  return out.str();
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_SUITE("scenario") {
  TEST_CASE("config parsing") {
    const auto c = parse(R"(# demo
name = demo
state = psi
amp1 = 0.6
phase = 1.25   # radians
lambda_a = 0.3
delta_a = 4
coupled_b = false
t_max = 12.5
n_steps = 126
measures = concurrence, discord
discord_method = both
g_method = both
grid = 32x16
)");
    CHECK(c.name == "demo");
    CHECK(c.initial.family == BellFamily::Psi);
    CHECK(c.initial.amp1 == 0.6);
    CHECK(c.initial.amp2 == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(c.initial.phase == 1.25);
    REQUIRE(c.reservoir_a.has_value());
    CHECK(c.reservoir_a->lambda == 0.3);
    CHECK(c.reservoir_a->delta == 4.0);
    CHECK_FALSE(c.reservoir_b.has_value());
    CHECK(c.t_max == 12.5);
    CHECK(c.n_steps == 126);
    CHECK(c.measures.concurrence);
    CHECK(c.measures.discord);
    CHECK_FALSE(c.measures.mutual_info);
    CHECK(c.discord_method == DiscordChoice::Both);
    CHECK(c.g_method == GMethod::Both);
    CHECK(c.grid.n_theta == 32);
    CHECK(c.grid.n_phi == 16);
  }

  TEST_CASE("config fields round trip") {
    const auto c = parse("name = rt\nstate = phi\namp1 = 0.3\nphase = 0.1\nlambda_b = 0.7\ndelta_b = -2\n"
                         "coupled_a = false\nmeasures = mutual_info\ng_method = volterra\n");
    std::string text;
    for (const auto& [k, v] : config_fields(c)) text += k + " = " + v + "\n";
    const auto back = parse(text);
    CHECK(config_fields(back) == config_fields(c));
  }

  TEST_CASE("invalid configs") {
    CHECK_THROWS_AS(parse("measures =\n"), ConfigError);
    CHECK_THROWS_AS(parse("colour = blue\n"), ConfigError);
    CHECK_THROWS_AS(parse("t_max = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("n_steps = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("n_steps = 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse("lambda_a = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse("amp1 = 0.6\namp2 = 0.6\n"), ConfigError);
    CHECK_THROWS_AS(parse("state = chi\n"), ConfigError);
    CHECK_THROWS_AS(parse("measures = entanglement\n"), ConfigError);
    CHECK_THROWS_AS(parse("just words\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/qbeats.cfg"), ConfigError);
  }

  TEST_CASE("two-sample trace starts at the initial correlations") {
    const auto c = parse("t_max = 1\nn_steps = 2\nstate = phi\n");
    const auto t = run_scenario(c);
    REQUIRE(t.size() == 2);
    CHECK(t.times[0] == 0.0);
    CHECK(t.times[1] == 1.0);
    CHECK(t.column("C")[0] == doctest::Approx(1.0));
    CHECK(t.column("D")[0] == doctest::Approx(1.0));
    CHECK(t.column("I")[0] == doctest::Approx(2.0));
    CHECK(t.column("Q")[0] == doctest::Approx(1.0));
    CHECK(t.column("gA2")[0] == 1.0);
    CHECK(t.column("gB2")[0] == 1.0);
  }

  TEST_CASE("column layout") {
    const auto t = run_scenario(parse("t_max = 5\nn_steps = 51\nmeasures = classical,concurrence\n"));
    std::vector<std::string> names;
    for (const auto& c : t.columns()) names.push_back(c.first);
    CHECK(names == std::vector<std::string>{"C", "Q", "gA2", "gB2"});
    CHECK(t.meta_value("name") == "scenario");
    CHECK_FALSE(t.meta_value("time_unit").empty());
  }

  TEST_CASE("both discord and both G methods") {
    const auto t = run_scenario(parse("t_max = 10\nn_steps = 101\ndiscord_method = both\ng_method = both\n"
                                      "delta_a = 3\nlambda_b = 0.5\ngrid = 32x32\n"));
    for (const char* c : {"D", "D_var", "Q", "Q_var", "gA2_volterra", "gB2_volterra"}) CHECK(t.has_column(c));
    CHECK(std::stod(t.meta_value("max_dev_D")) < 2e-3);
    CHECK(std::stod(t.meta_value("max_dev_G")) < 1e-5);
  }

  TEST_CASE("variational-only discord fills D and Q") {
    const auto t = run_scenario(parse("t_max = 2\nn_steps = 21\ndiscord_method = variational\ngrid = 16x16\n"));
    const auto& d = t.column("D");
    const auto& q = t.column("Q");
    const auto& i = t.column("I");
    for (std::size_t k = 0; k < t.size(); ++k) CHECK(d[k] + q[k] == doctest::Approx(i[k]));
  }

  TEST_CASE("isolated qubit keeps G = 1") {
    const auto t = run_scenario(parse("coupled_a = false\nt_max = 3\nn_steps = 31\nmeasures = concurrence\n"));
    for (double v : t.column("gA2")) CHECK(v == 1.0);
    CHECK(t.column("gB2").back() < 1.0);
  }

  TEST_CASE("errors carry the scenario name") {
    ScenarioConfig c;
    c.name = "broken";
    c.n_steps = 1;
    try {
      run_scenario(c);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("scenario 'broken'") != std::string::npos);
    }

    ScenarioConfig far;
    far.name = "far";
    far.g_method = GMethod::Volterra;
    far.reservoir_a = ReservoirParams{1.0, 0.2, 1e5};
    far.t_max = 1.0;
    far.n_steps = 11;
    CHECK_THROWS_AS(run_scenario(far), NumericalError);
  }

  TEST_CASE("figure presets") {
    const auto f1 = figure_preset(1);
    REQUIRE(f1.size() == 2);
    CHECK(f1[0].initial.family != f1[1].initial.family);
    for (const auto& c : f1) {
      CHECK(c.reservoir_a->lambda == 0.2);
      CHECK(c.reservoir_a->delta == doctest::Approx(10.0).epsilon(1e-15));
      CHECK(c.reservoir_b->delta == doctest::Approx(9.0).epsilon(1e-15));
      CHECK(c.measures.concurrence);
    }
    const auto f2 = figure_preset(2);
    REQUIRE(f2.size() == 4);
    int a_only = 0, b_only = 0;
    for (const auto& c : f2) {
      CHECK(c.initial.family == BellFamily::Phi);
      a_only += c.reservoir_a && !c.reservoir_b;
      b_only += !c.reservoir_a && c.reservoir_b;
    }
    CHECK(a_only == 2);
    CHECK(b_only == 2);
    for (const auto& c : figure_preset(3)) CHECK(c.measures.discord);
    CHECK(figure_preset(4).size() == 8);
    for (const auto& c : figure_preset(5)) CHECK(c.reservoir_a->delta == 2.0);
    CHECK(figure_preset(5).size() == 6);
    CHECK_THROWS_AS(figure_preset(0), ConfigError);
    CHECK_THROWS_AS(figure_preset(6), ConfigError);
  }

  TEST_CASE("CSV round trip is bit exact") {
    const auto t = run_scenario(parse("t_max = 7.3\nn_steps = 97\ndelta_a = 1.7\nstate = psi\namp1 = 0.35\n"));
    std::istringstream in(to_csv(t));
    const auto back = read_trace_csv(in);
    REQUIRE(back.size() == t.size());
    CHECK(back.meta == t.meta);
    for (std::size_t i = 0; i < t.size(); ++i) CHECK(same_bits(back.times[i], t.times[i]));
    REQUIRE(back.columns().size() == t.columns().size());
    for (std::size_t c = 0; c < t.columns().size(); ++c) {
      CHECK(back.columns()[c].first == t.columns()[c].first);
      const auto& a = t.columns()[c].second;
      const auto& b = back.columns()[c].second;
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(same_bits(a[i], b[i]));
    }
  }

  TEST_CASE("identical configs give identical CSV") {
    const auto c = parse("t_max = 20\nn_steps = 401\ndelta_b = 9\ndelta_a = 10\n");
    CHECK(to_csv(run_scenario(c)) == to_csv(run_scenario(c)));
  }

  TEST_CASE("malformed CSV") {
    std::istringstream no_header("# a = b\n");
    CHECK_THROWS_AS(read_trace_csv(no_header), ConfigError);
    std::istringstream short_row("t,C\n0,1\n1\n");
    CHECK_THROWS_AS(read_trace_csv(short_row), ConfigError);
    std::istringstream bad_cell("t,C\n0,x\n");
    CHECK_THROWS_AS(read_trace_csv(bad_cell), ConfigError);
  }

  TEST_CASE("trace file is written atomically") {
    const auto dir = std::filesystem::temp_directory_path() / "qbeats_test_out";
    std::filesystem::remove_all(dir);
    const auto t = run_scenario(parse("t_max = 1\nn_steps = 11\n"));
    const auto path = (dir / "x.csv").string();
    write_trace_file(path, t);
    CHECK(std::filesystem::exists(path));
    CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
    std::ifstream in(path);
    CHECK(read_trace_csv(in).size() == 11);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("validation report") {
    ValidationOptions opt;
    opt.random_draws = 10;
    const auto ok = validate(opt);
    CHECK(ok.checks.size() == 5);
    CHECK(ok.all_passed());
    for (const auto& c : ok.checks) CHECK(c.max_deviation <= c.tolerance);

    opt.inject_sinh_fault = true;
    const auto bad = validate(opt);
    CHECK_FALSE(bad.all_passed());
    CHECK_FALSE(bad.checks.front().passed);
    for (std::size_t k = 1; k < bad.checks.size(); ++k) CHECK(bad.checks[k].passed);
  }
}
