// Copyright 2026 The lightcone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace lightcone {

/// Base class for all lightcone errors.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes or coordinate counts do not match.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A matrix required to be Hermitian is not, within tolerance.
class HermiticityError : public Error {
  public:
    using Error::Error;
};

/// An effect operator is not positive semidefinite or exceeds the identity.
class EffectError : public Error {
  public:
    using Error::Error;
};

/// A state update or conditioning step hit an outcome of (numerically) zero
/// probability, where the operation is undefined.
class ZeroProbabilityOutcome : public Error {
  public:
    using Error::Error;
};

/// Two measurement models act on overlapping subsystems and cannot be
/// combined into a joint distribution.
class CompatibilityError : public Error {
  public:
    using Error::Error;
};

/// An operation's documented precondition was violated.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// A scenario config failed to parse or validate. Carries the JSON field
/// path of the offending entry.
class ConfigError : public Error {
  public:
    ConfigError(std::string field_path, const std::string& message)
        : Error(field_path + ": " + message), field_path_(std::move(field_path)) {}

    const std::string& field_path() const { return field_path_; }

  private:
    std::string field_path_;
};

} // namespace lightcone
