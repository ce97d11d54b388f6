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
#include <numbers>

#include "doctest.h"
#include "qbeats/analysis.hpp"
#include "qbeats/error.hpp"
#include "qbeats/scenario.hpp"

using namespace qbeats;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
CorrelationTrace sampled(const char* column, double t_max, int n, F&& f) {
  CorrelationTrace trace;
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    trace.times.push_back(t_max * i / (n - 1));
    y[i] = f(trace.times.back());
  }
  trace.add_column(column, std::move(y));
  return trace;
}

ScenarioConfig preset(int id, const std::string& name) {
  for (auto& c : figure_preset(id))
    if (c.name == name) return c;
  FAIL("no preset named " << name);
  return {};
}

}  // namespace

TEST_SUITE("analysis") {
  TEST_CASE("trace columns") {
    CorrelationTrace t;
    t.times = {0.0, 1.0};
    t.add_column("C", {1.0, 0.5});
    CHECK(t.has_column("C"));
    CHECK_FALSE(t.has_column("D"));
    CHECK_THROWS_AS(t.column("D"), PreconditionError);
    CHECK_THROWS_AS(t.add_column("D", {1.0}), PreconditionError);
    t.set_meta("k", "1");
    t.set_meta("k", "2");
    CHECK(t.meta_value("k") == "2");
    CHECK(t.meta.size() == 1);
  }

  TEST_CASE("ESD intervals") {
    SUBCASE("strictly positive column") {
      const auto t = sampled("C", 10.0, 1001, [](double x) { return 0.5 + 0.4 * std::cos(x); });
      CHECK(detect_esd_intervals(t).empty());
    }
    SUBCASE("identically one") {
      const auto t = sampled("C", 10.0, 101, [](double) { return 1.0; });
      CHECK(detect_esd_intervals(t).empty());
    }
    SUBCASE("isolated zero samples are not intervals") {
      const auto t = sampled("C", 2.0 * kPi, 201, [](double x) { return std::abs(std::cos(x)); });
      CHECK(detect_esd_intervals(t).empty());
    }
    SUBCASE("zero runs with bisection refinement") {
      const auto f = [](double x) { return std::max(0.0, std::cos(x)); };
      const auto t = sampled("C", 7.0, 71, f);
      const auto coarse = detect_esd_intervals(t);
      REQUIRE(coarse.size() == 1);
      CHECK(std::abs(coarse[0].start - 0.5 * kPi) < 0.1);
      const auto fine = detect_esd_intervals(t, "C", f);
      REQUIRE(fine.size() == 1);
      CHECK(fine[0].start == doctest::Approx(0.5 * kPi).epsilon(1e-12));
      CHECK(fine[0].end == doctest::Approx(1.5 * kPi).epsilon(1e-12));
    }
    SUBCASE("run reaching the end of the trace") {
      const auto t = sampled("C", 4.0, 41, [](double x) { return std::max(0.0, 1.0 - x); });
      const auto iv = detect_esd_intervals(t);
      REQUIRE(iv.size() == 1);
      CHECK(iv[0].end == 4.0);
    }
    SUBCASE("non-uniform grid is rejected") {
      CorrelationTrace t;
      t.times = {0.0, 1.0, 3.0};
      t.add_column("C", {1.0, 0.0, 0.0});
      CHECK_THROWS_AS(detect_esd_intervals(t), PreconditionError);
    }
  }

  TEST_CASE("ESD appears for weak psi states and never for phi") {
    const ReservoirParams strong{1.0, 0.1, 0.0};
    for (auto f : {BellFamily::Psi, BellFamily::Phi}) {
      ScenarioConfig cfg;
      cfg.initial = InitialState{f, std::sqrt(0.2), std::sqrt(0.8), 0.0};
      cfg.reservoir_a = strong;
      cfg.reservoir_b = strong;
      cfg.measures = {true, false, false, false};
      cfg.t_max = 60.0;
      cfg.n_steps = 6001;
      const auto trace = run_scenario(cfg);
      const auto exact = [&](double t) {
        const complex g = g_closed_form(t, strong);
        return f == BellFamily::Psi ? concurrence_psi(cfg.initial, g, g) : concurrence_phi(cfg.initial, g, g);
      };
      const auto intervals = detect_esd_intervals(trace, "C", exact);
      if (f == BellFamily::Psi) {
        REQUIRE_FALSE(intervals.empty());
        for (const auto& iv : intervals) {
          CHECK(iv.end > iv.start);
          CHECK(psi_sudden_death(cfg.initial, g_closed_form(0.5 * (iv.start + iv.end), strong),
                                 g_closed_form(0.5 * (iv.start + iv.end), strong)));
        }
      } else {
        CHECK(intervals.empty());
      }
    }
  }

  TEST_CASE("dominant frequencies") {
    const double dt = 0.01;
    std::vector<double> y;
    for (int i = 0; i < 4000; ++i) {
      const double t = i * dt;
      y.push_back(0.2 + 0.01 * t + std::cos(3.0 * t) + 0.5 * std::sin(7.0 * t + 0.3));
    }
    const auto peaks = dominant_frequencies(y, dt, 2);
    REQUIRE(peaks.size() == 2);
    CHECK(peaks[0].frequency == doctest::Approx(3.0).epsilon(2e-3));
    CHECK(peaks[1].frequency == doctest::Approx(7.0).epsilon(2e-3));
    CHECK(peaks[0].magnitude > peaks[1].magnitude);
  }

  TEST_CASE("synthetic beat and plain oscillation") {
    const auto beat = sampled("X", 40.0, 4001, [](double t) {
      return 1.0 + 0.2 * (std::cos(9.5 * t) + std::cos(10.5 * t)) * std::exp(-0.05 * t);
    });
    const auto r = beat_analysis(beat, "X");
    CHECK(r.verdict == BeatVerdict::Beat);
    CHECK(r.modulation_depth > 0.9);
    CHECK(r.envelope_minima_times.size() >= 5);
    CHECK(r.carrier_freq == doctest::Approx(10.0).epsilon(1e-2));
    CHECK(r.envelope_freq == doctest::Approx(0.5).epsilon(5e-2));
    CHECK(r.envelope_freq < r.carrier_freq);
    // Nodes at t = (2k + 1) pi.
    for (double t : r.envelope_minima_times) {
      const double k = (t / kPi - 1.0) / 2.0;
      CHECK(std::abs(k - std::round(k)) < 0.02);
    }

    const auto plain = sampled("X", 40.0, 4001, [](double t) {
      return 0.3 + 0.5 * std::exp(-0.1 * t) + 0.2 * std::cos(10.0 * t) * std::exp(-0.2 * t);
    });
    const auto p = beat_analysis(plain, "X");
    CHECK(p.verdict == BeatVerdict::PlainOscillation);
    CHECK(p.modulation_depth < 0.2);

    const BeatThresholds strict{std::min(1.0, r.modulation_depth + 0.01), r.modulation_depth - 0.01};
    CHECK(beat_analysis(beat, "X", strict).verdict == BeatVerdict::Indeterminate);
  }

  TEST_CASE("too few oscillations") {
    const auto t = sampled("X", 10.0, 1001, [](double x) { return std::exp(-x); });
    CHECK_THROWS_AS(beat_analysis(t, "X"), NumericalError);
  }

  TEST_CASE("beats of the two-reservoir model") {
    for (int id : {1, 3})
      for (const auto& cfg : figure_preset(id)) {
        const auto trace = run_scenario(cfg);
        const std::string col = id == 1 ? "C" : "D";
        const auto r = beat_analysis(trace, col);
        CAPTURE(cfg.name);
        CHECK(r.modulation_depth > 0.5);
        CHECK(r.envelope_minima_times.size() >= 3);
        CHECK(r.verdict == BeatVerdict::Beat);
        CHECK(r.envelope_freq < r.carrier_freq);
      }
  }

  TEST_CASE("single reservoir gives no beat") {
    for (const auto& cfg : figure_preset(2)) {
      const auto trace = run_scenario(cfg);
      const auto r = beat_analysis(trace, cfg.measures.concurrence ? "C" : "D");
      CAPTURE(cfg.name);
      CHECK(r.modulation_depth < 0.2);
      CHECK(r.verdict == BeatVerdict::PlainOscillation);
    }
  }

  TEST_CASE("envelope frequency is half the difference of the single-qubit lines") {
    const auto cfg = preset(1, "fig1_phi");
    const auto trace = run_scenario(cfg);
    const double dt = trace.times[1] - trace.times[0];
    const double fa = dominant_frequencies(trace.column("gA2"), dt, 1).at(0).frequency;
    const double fb = dominant_frequencies(trace.column("gB2"), dt, 1).at(0).frequency;
    const auto r = beat_analysis(trace, "C");
    CHECK(r.envelope_freq == doctest::Approx(0.5 * std::abs(fa - fb)).epsilon(0.1));
  }

  TEST_CASE("beat report does not depend on the initial phase") {
    auto cfg = preset(3, "fig3_psi");
    cfg.measures = {true, true, false, false};
    const auto ref_trace = run_scenario(cfg);
    const auto ref_c = beat_analysis(ref_trace, "C");
    const auto ref_d = beat_analysis(ref_trace, "D");
    for (double phase : {kPi / 3, kPi, 1.5 * kPi}) {
      cfg.initial.phase = phase;
      const auto trace = run_scenario(cfg);
      for (const auto& [col, ref] : {std::pair{"C", ref_c}, std::pair{"D", ref_d}}) {
        const auto r = beat_analysis(trace, col);
        CHECK(r.modulation_depth == doctest::Approx(ref.modulation_depth).epsilon(1e-9));
        CHECK(r.carrier_freq == doctest::Approx(ref.carrier_freq).epsilon(1e-9));
        CHECK(r.envelope_minima_times == ref.envelope_minima_times);
      }
    }
  }

  TEST_CASE("report fields") {
    BeatReport r;
    r.envelope_minima_times = {1.5, 4.25};
    r.modulation_depth = 0.75;
    r.verdict = BeatVerdict::Beat;
    const auto f = beat_report_fields(r);
    CHECK(f.front().first == "beat.verdict");
    CHECK(f.front().second == "beat");
    bool found = false;
    for (const auto& [k, v] : f)
      if (k == "beat.envelope_minima_times") {
        CHECK(v == "1.5,4.25");
        found = true;
      }
    CHECK(found);
  }

  TEST_CASE("decay summary") {
    const auto constant = sampled("D", 5.0, 11, [](double) { return 0.7; });
    CHECK(std::isinf(decay_summary(constant, "D").t_half));
    CHECK(decay_summary(constant, "D").final_value == 0.7);

    CorrelationTrace t;
    t.times = {0.0, 1.0, 2.0, 3.0};
    t.add_column("D", {1.0, 0.8, 0.4, 0.3});
    const auto s = decay_summary(t, "D");
    CHECK(s.t_half == doctest::Approx(1.75));
    CHECK(s.final_value == 0.3);

    CorrelationTrace rising;
    rising.times = {0.0, 1.0};
    rising.add_column("D", {0.5, 0.6});
    CHECK_THROWS_AS(decay_summary(rising, "D"), PreconditionError);
  }

  TEST_CASE("discord half-life grows as the reservoir narrows") {
    double previous = 0.0;
    for (double lambda : {1.0, 0.2, 0.05}) {
      ScenarioConfig cfg;
      cfg.reservoir_a = cfg.reservoir_b = ReservoirParams{1.0, lambda, 2.0};
      cfg.measures = {false, true, false, false};
      cfg.t_max = 1500.0;
      cfg.n_steps = 15001;
      const double t_half = decay_summary(run_scenario(cfg), "D").t_half;
      CHECK(t_half > previous);
      previous = t_half;
    }
  }
}
