// Copyright 2026 The dipesim Authors
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

namespace dipe {

/// Malformed input: bad grammar, out-of-range parameter, odd n for brickwork.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands of different qubit counts.
class DimensionMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Request exceeds a configured size cap (statevector qubits, Pauli enumeration, bond dimension).
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void require_config(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

inline void require_same_n(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": qubit counts " + std::to_string(a) + " and " +
                            std::to_string(b) + " differ");
  }
}

}  // namespace dipe
