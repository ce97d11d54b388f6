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

#include <cstdint>
#include <string>
#include <vector>

namespace qbeats {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

struct ValidationOptions {
  std::uint64_t seed = 20260101;
  int random_draws = 50;
  /// Mutation check: evaluate G_A with qubit B's root in the sinh
  /// coefficient. The closed-form vs ODE check must then fail.
  bool inject_sinh_fault = false;
};

/// Cross-checks every closed form against its independent route:
/// closed-form G vs ODE-reduced Volterra, ODE vs quadrature Volterra,
/// analytic X-state elements vs local Kraus maps, closed-form vs general
/// concurrence, analytic vs variational discord.
ValidationReport validate(const ValidationOptions& options = {});

}  // namespace qbeats
