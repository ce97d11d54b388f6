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

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qbeats {

/// Uniformly sampled time series of named real columns (t in units of
/// 1/gamma0) plus free-form key/value metadata.
class CorrelationTrace {
 public:
  std::vector<double> times;
  std::vector<std::pair<std::string, std::string>> meta;

  void add_column(std::string name, std::vector<double> values);
  bool has_column(std::string_view name) const;
  /// Throws PreconditionError for an unknown column.
  const std::vector<double>& column(std::string_view name) const;
  const std::vector<std::pair<std::string, std::vector<double>>>& columns() const { return columns_; }

  void set_meta(std::string key, std::string value);
  /// Empty string when the key is absent.
  std::string meta_value(std::string_view key) const;

  std::size_t size() const { return times.size(); }

 private:
  std::vector<std::pair<std::string, std::vector<double>>> columns_;
};

struct TimeInterval {
  double start = 0.0;
  double end = 0.0;
};

/// Maximal runs of at least two consecutive samples with column <= 1e-12.
/// When `exact` is given (e.g. a closed-form concurrence), each boundary is
/// refined by bisection between the last positive and first zero sample.
/// A run that reaches the end of the trace ends at the last sample time.
std::vector<TimeInterval> detect_esd_intervals(const CorrelationTrace& trace, std::string_view column = "C",
                                               const std::function<double(double)>& exact = {});

struct SpectralPeak {
  double frequency = 0.0;  // angular, rad per unit time
  double magnitude = 0.0;
};

/// The `count` strongest local maxima of the Hann-windowed DFT magnitude of
/// the detrended samples, ordered by magnitude. Each peak frequency is
/// refined by a parabola through the log-magnitudes of the neighbouring bins.
std::vector<SpectralPeak> dominant_frequencies(std::span<const double> samples, double dt, std::size_t count);

struct BeatThresholds {
  double beat = 0.5;   // modulation depth above which a beat is declared
  double plain = 0.2;  // modulation depth below which the oscillation is plain
};

enum class BeatVerdict { Beat, PlainOscillation, Indeterminate };

struct BeatReport {
  std::vector<double> envelope_minima_times;
  double modulation_depth = 0.0;
  double carrier_freq = 0.0;
  double envelope_freq = 0.0;
  BeatVerdict verdict = BeatVerdict::Indeterminate;
};

/// Envelope analysis of the oscillating part of a column.
///
/// The slow trend is removed with a moving average over one period of the
/// dominant spectral line. Upper and lower envelopes are natural cubic
/// splines through the local maxima and minima of the residual; their half
/// difference is the oscillation amplitude, which is divided by its
/// least-squares exponential decay before the modulation depth
/// (max - min) / max is taken. Envelope minima are the interior local minima
/// of that normalized amplitude lying below (1 - thresholds.beat) of its
/// maximum. Carrier and envelope frequencies are the half sum and half
/// difference of the two strongest spectral lines.
///
/// Throws NumericalError when the residual has fewer than 4 local maxima.
BeatReport beat_analysis(const CorrelationTrace& trace, std::string_view column,
                         const BeatThresholds& thresholds = {});

/// "beat.key = value" lines, suitable for CSV comment metadata.
std::vector<std::pair<std::string, std::string>> beat_report_fields(const BeatReport& report);

struct DecaySummary {
  /// First time the column drops below half its initial value (linear
  /// interpolation); +infinity if it never does.
  double t_half = std::numeric_limits<double>::infinity();
  double final_value = 0.0;
};

/// Throws PreconditionError unless the column starts at its maximum.
DecaySummary decay_summary(const CorrelationTrace& trace, std::string_view column);

const char* to_string(BeatVerdict v);

}  // namespace qbeats
