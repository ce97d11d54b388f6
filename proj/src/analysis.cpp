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

#include "qbeats/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "qbeats/error.hpp"

namespace qbeats {
namespace {

constexpr double kEsdThreshold = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double uniform_step(const std::vector<double>& t) {
  if (t.size() < 2) throw PreconditionError("trace needs at least two samples");
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  if (!(dt > 0.0)) throw PreconditionError("trace times must increase");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * dt) throw PreconditionError("trace time grid is not uniform");
  return dt;
}

// Natural cubic spline through (x_i, y_i), x strictly increasing.
class NaturalSpline {
 public:
  NaturalSpline(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)), m_(x_.size()) {
    const std::size_t n = x_.size();
    if (n < 3) return;  // linear
    std::vector<double> diag(n), upper(n), rhs(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      diag[i] = 2.0 * (h0 + h1);
      upper[i] = h1;
      rhs[i] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
    }
    // Thomas algorithm on rows 1..n-2 (sub-diagonal of row i is h_{i-1}).
    for (std::size_t i = 2; i + 1 < n; ++i) {
      const double w = (x_[i] - x_[i - 1]) / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i) {
      m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
      if (i == 1) break;
    }
  }

  double operator()(double t) const {
    const auto it = std::upper_bound(x_.begin(), x_.end(), t);
    std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    i = std::min(i, x_.size() - 2);
    const double h = x_[i + 1] - x_[i];
    const double a = (x_[i + 1] - t) / h;
    const double b = (t - x_[i]) / h;
    return a * y_[i] + b * y_[i + 1] + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
  }

 private:
  std::vector<double> x_, y_, m_;
};

std::vector<std::size_t> local_extrema(const std::vector<double>& y, bool maxima) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const bool hit = maxima ? (y[i] > y[i - 1] && y[i] >= y[i + 1]) : (y[i] < y[i - 1] && y[i] <= y[i + 1]);
    if (hit) idx.push_back(i);
  }
  return idx;
}

NaturalSpline spline_through(const std::vector<double>& t, const std::vector<double>& y,
                             const std::vector<std::size_t>& idx) {
  std::vector<double> xs, ys;
  for (auto i : idx) {
    xs.push_back(t[i]);
    ys.push_back(y[i]);
  }
  return NaturalSpline(std::move(xs), std::move(ys));
}

// Centered moving average of odd width; returns y - average on the samples
// where the full window fits, with matching times.
std::pair<std::vector<double>, std::vector<double>> remove_trend(const std::vector<double>& t,
                                                                 const std::vector<double>& y, std::size_t width) {
  const std::size_t half = width / 2;
  std::vector<double> prefix(y.size() + 1, 0.0);
  for (std::size_t i = 0; i < y.size(); ++i) prefix[i + 1] = prefix[i] + y[i];
  std::vector<double> tt, r;
  for (std::size_t i = half; i + half < y.size(); ++i) {
    const double mean = (prefix[i + half + 1] - prefix[i - half]) / static_cast<double>(width);
    tt.push_back(t[i]);
    r.push_back(y[i] - mean);
  }
  return {std::move(tt), std::move(r)};
}

}  // namespace

void CorrelationTrace::add_column(std::string name, std::vector<double> values) {
  if (values.size() != times.size())
    throw PreconditionError("column '" + name + "' length does not match the time grid");
  if (has_column(name)) throw PreconditionError("duplicate column '" + name + "'");
  columns_.emplace_back(std::move(name), std::move(values));
}

bool CorrelationTrace::has_column(std::string_view name) const {
  return std::any_of(columns_.begin(), columns_.end(), [&](const auto& c) { return c.first == name; });
}

const std::vector<double>& CorrelationTrace::column(std::string_view name) const {
  for (const auto& c : columns_)
    if (c.first == name) return c.second;
  throw PreconditionError("trace has no column '" + std::string(name) + "'");
}

void CorrelationTrace::set_meta(std::string key, std::string value) {
  for (auto& kv : meta)
    if (kv.first == key) {
      kv.second = std::move(value);
      return;
    }
  meta.emplace_back(std::move(key), std::move(value));
}

std::string CorrelationTrace::meta_value(std::string_view key) const {
  for (const auto& kv : meta)
    if (kv.first == key) return kv.second;
  return {};
}

std::vector<TimeInterval> detect_esd_intervals(const CorrelationTrace& trace, std::string_view column,
                                               const std::function<double(double)>& exact) {
  uniform_step(trace.times);
  const auto& y = trace.column(column);
  const auto& t = trace.times;
  const std::size_t n = y.size();

  std::vector<TimeInterval> out;
  std::size_t i = 0;
  while (i < n) {
    if (y[i] > kEsdThreshold) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && y[j + 1] <= kEsdThreshold) ++j;
    if (j > i) {
      TimeInterval iv{t[i], t[j]};
      if (exact && i > 0) {
        double lo = t[i - 1], hi = t[i];
        for (int k = 0; k < 60; ++k) {
          const double mid = 0.5 * (lo + hi);
          (exact(mid) <= kEsdThreshold ? hi : lo) = mid;
        }
        iv.start = hi;
      }
      if (exact && j + 1 < n) {
        double lo = t[j], hi = t[j + 1];
        for (int k = 0; k < 60; ++k) {
          const double mid = 0.5 * (lo + hi);
          (exact(mid) <= kEsdThreshold ? lo : hi) = mid;
        }
        iv.end = lo;
      }
      out.push_back(iv);
    }
    i = j + 1;
  }
  return out;
}

std::vector<SpectralPeak> dominant_frequencies(std::span<const double> samples, double dt, std::size_t count) {
  const std::size_t n = samples.size();
  if (n < 8) throw PreconditionError("spectrum needs at least 8 samples");

  // Least-squares line removal, then Hann window.
  const double tm = 0.5 * static_cast<double>(n - 1);
  double sy = 0.0, sty = 0.0, stt = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) - tm;
    sy += samples[i];
    sty += x * samples[i];
    stt += x * x;
  }
  const double mean = sy / static_cast<double>(n);
  const double slope = sty / stt;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n - 1)));
    x[i] = w * (samples[i] - mean - slope * (static_cast<double>(i) - tm));
  }

  std::vector<double> cos_table(n), sin_table(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double a = kTwoPi * static_cast<double>(m) / static_cast<double>(n);
    cos_table[m] = std::cos(a);
    sin_table[m] = std::sin(a);
  }
  const std::size_t half = n / 2;
  std::vector<double> mag(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    double re = 0.0, im = 0.0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      re += x[i] * cos_table[idx];
      im -= x[i] * sin_table[idx];
      idx += k;
      if (idx >= n) idx -= n;
    }
    mag[k] = std::hypot(re, im);
  }

  std::vector<SpectralPeak> peaks;
  for (std::size_t k = 2; k + 1 <= half; ++k) {
    if (!(mag[k] > mag[k - 1] && mag[k] >= mag[k + 1])) continue;
    double shift = 0.0;
    double peak_mag = mag[k];
    if (mag[k - 1] > 0.0 && mag[k + 1] > 0.0) {
      const double a = std::log(mag[k - 1]), b = std::log(mag[k]), c = std::log(mag[k + 1]);
      const double denom = a - 2.0 * b + c;
      if (denom < 0.0) {
        shift = 0.5 * (a - c) / denom;
        peak_mag = std::exp(b - 0.25 * (a - c) * shift);
      }
    }
    peaks.push_back({kTwoPi * (static_cast<double>(k) + shift) / (static_cast<double>(n) * dt), peak_mag});
  }
  std::stable_sort(peaks.begin(), peaks.end(), [](const auto& l, const auto& r) { return l.magnitude > r.magnitude; });
  if (peaks.size() > count) peaks.resize(count);
  return peaks;
}

BeatReport beat_analysis(const CorrelationTrace& trace, std::string_view column, const BeatThresholds& thresholds) {
  const double dt = uniform_step(trace.times);
  const auto& y = trace.column(column);

  const auto peaks = dominant_frequencies(y, dt, 2);
  if (peaks.empty()) throw NumericalError("insufficient oscillation: no spectral line in column " + std::string(column));

  BeatReport report;
  if (peaks.size() == 2) {
    report.carrier_freq = 0.5 * (peaks[0].frequency + peaks[1].frequency);
    report.envelope_freq = 0.5 * std::abs(peaks[0].frequency - peaks[1].frequency);
  } else {
    report.carrier_freq = peaks[0].frequency;
  }

  const double period = kTwoPi / peaks[0].frequency;
  const std::size_t width = 2 * static_cast<std::size_t>(std::lround(period / (2.0 * dt))) + 1;
  if (width < 3 || 2 * width >= y.size())
    throw NumericalError("insufficient oscillation: trace too short or too coarse for the carrier period");
  const auto [tt, r] = remove_trend(trace.times, y, width);

  const auto maxima = local_extrema(r, true);
  const auto minima = local_extrema(r, false);
  if (maxima.size() < 4 || minima.size() < 2)
    throw NumericalError("insufficient oscillation: fewer than 4 local maxima in column " + std::string(column));

  const NaturalSpline upper = spline_through(tt, r, maxima);
  const NaturalSpline lower = spline_through(tt, r, minima);
  const double lo = std::max(tt[maxima.front()], tt[minima.front()]);
  const double hi = std::min(tt[maxima.back()], tt[minima.back()]);

  std::vector<double> tw, amp;
  for (std::size_t i = 0; i < tt.size(); ++i) {
    if (tt[i] < lo || tt[i] > hi) continue;
    tw.push_back(tt[i]);
    amp.push_back(std::max(0.0, 0.5 * (upper(tt[i]) - lower(tt[i]))));
  }
  if (tw.size() < 3) throw NumericalError("insufficient oscillation: empty envelope window");

  // Least-squares exponential decay of the amplitude.
  const double amp_max = *std::max_element(amp.begin(), amp.end());
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, sy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < tw.size(); ++i) {
    if (!(amp[i] > 1e-12 * amp_max)) continue;
    const double ly = std::log(amp[i]);
    s0 += 1.0;
    s1 += tw[i];
    s2 += tw[i] * tw[i];
    sy += ly;
    sxy += tw[i] * ly;
  }
  const double det = s0 * s2 - s1 * s1;
  const double rate = det > 0.0 ? (s0 * sxy - s1 * sy) / det : 0.0;

  std::vector<double> normalized(amp.size());
  for (std::size_t i = 0; i < amp.size(); ++i) normalized[i] = amp[i] * std::exp(-rate * (tw[i] - tw.front()));
  const auto [mn, mx] = std::minmax_element(normalized.begin(), normalized.end());
  report.modulation_depth = *mx > 0.0 ? (*mx - *mn) / *mx : 0.0;

  const double node_level = (1.0 - thresholds.beat) * *mx;
  for (auto i : local_extrema(normalized, false))
    if (normalized[i] < node_level) report.envelope_minima_times.push_back(tw[i]);

  if (report.modulation_depth > thresholds.beat)
    report.verdict = BeatVerdict::Beat;
  else if (report.modulation_depth < thresholds.plain)
    report.verdict = BeatVerdict::PlainOscillation;
  else
    report.verdict = BeatVerdict::Indeterminate;
  return report;
}

std::vector<std::pair<std::string, std::string>> beat_report_fields(const BeatReport& report) {
  const auto num = [](double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::string minima;
  for (std::size_t i = 0; i < report.envelope_minima_times.size(); ++i) {
    if (i) minima += ',';
    minima += num(report.envelope_minima_times[i]);
  }
  return {{"beat.verdict", to_string(report.verdict)},
          {"beat.modulation_depth", num(report.modulation_depth)},
          {"beat.carrier_freq", num(report.carrier_freq)},
          {"beat.envelope_freq", num(report.envelope_freq)},
          {"beat.envelope_minima_count", std::to_string(report.envelope_minima_times.size())},
          {"beat.envelope_minima_times", minima}};
}

DecaySummary decay_summary(const CorrelationTrace& trace, std::string_view column) {
  const auto& y = trace.column(column);
  if (y.empty()) throw PreconditionError("decay_summary on an empty trace");
  const double top = *std::max_element(y.begin(), y.end());
  if (y.front() < top - 1e-9 * std::max(1.0, std::abs(top)))
    throw PreconditionError("column '" + std::string(column) + "' does not start at its maximum");

  DecaySummary s;
  s.final_value = y.back();
  const double half = 0.5 * y.front();
  for (std::size_t i = 1; i < y.size(); ++i) {
    if (y[i] < half) {
      const double frac = (half - y[i - 1]) / (y[i] - y[i - 1]);
      s.t_half = trace.times[i - 1] + frac * (trace.times[i] - trace.times[i - 1]);
      break;
    }
  }
  return s;
}

const char* to_string(BeatVerdict v) {
  switch (v) {
    case BeatVerdict::Beat:
      return "beat";
    case BeatVerdict::PlainOscillation:
      return "plain";
    case BeatVerdict::Indeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

}  // namespace qbeats
