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

#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qbeats/error.hpp"
#include "qbeats/scenario.hpp"

namespace qbeats {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

double parse_cell(const std::string& cell, std::size_t row) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first != last && *first == ' ') ++first;
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("trace row " + std::to_string(row) + ": bad number '" + cell + "'");
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& out, const CorrelationTrace& trace) {
  for (const auto& [key, value] : trace.meta) out << "# " << key << " = " << value << '\n';
  out << 't';
  std::vector<const std::vector<double>*> data;
  for (const auto& [name, values] : trace.columns()) {
    out << ',' << name;
    data.push_back(&values);
  }
  out << '\n';
  for (std::size_t i = 0; i < trace.size(); ++i) {
    out << format_double(trace.times[i]);
    for (const auto* col : data) out << ',' << format_double((*col)[i]);
    out << '\n';
  }
}

CorrelationTrace read_trace_csv(std::istream& in) {
  CorrelationTrace trace;
  std::vector<std::string> header;
  std::vector<std::vector<double>> cols;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find(" = ");
      if (eq != std::string::npos && eq >= 2) trace.set_meta(line.substr(2, eq - 2), line.substr(eq + 3));
      continue;
    }
    if (header.empty()) {
      header = split_csv(line);
      if (header.empty() || header[0] != "t") throw ConfigError("trace header must start with 't'");
      cols.resize(header.size() - 1);
      continue;
    }
    ++row;
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw ConfigError("trace row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                        " cells");
    trace.times.push_back(parse_cell(cells[0], row));
    for (std::size_t j = 1; j < cells.size(); ++j) cols[j - 1].push_back(parse_cell(cells[j], row));
  }
  if (header.empty()) throw ConfigError("trace has no header row");
  for (std::size_t j = 0; j < cols.size(); ++j) trace.add_column(header[j + 1], std::move(cols[j]));
  return trace;
}

void write_trace_file(const std::string& path, const CorrelationTrace& trace) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    write_trace_csv(out, trace);
    out.flush();
    if (!out) throw ConfigError("write failed for '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace qbeats
