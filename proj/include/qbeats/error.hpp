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

#include <stdexcept>
#include <string>

namespace qbeats {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed arguments outside an operation's domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or command-line input.
class ConfigError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A physical or structural invariant does not hold (normalization,
/// |G| <= 1, X-state pattern, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Numerical breakdown: positivity loss, non-convergence, too few samples.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbeats
