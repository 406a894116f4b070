// Copyright 2026 The litsim Authors
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

namespace litsim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands whose dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates the invariants of its type (non-Hermitian, non-unitary,
/// bad trace, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Integration or sampling broke down (trace drift, dead state, step too
/// large).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid scenario configuration. The message starts with the
/// JSON path of the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace litsim
