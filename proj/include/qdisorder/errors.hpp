// Copyright 2026 The qdisorder Authors
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

namespace qdisorder {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Invalid chain or model parameters (site count out of range, bad array lengths, non-finite values).
class SpecError : public Error {
   public:
    using Error::Error;
};

/// A matrix that should be a density matrix is not Hermitian or not unit trace.
class StateError : public Error {
   public:
    using Error::Error;
};

/// A density matrix has an eigenvalue below the positivity tolerance.
class PositivityError : public StateError {
   public:
    using StateError::StateError;
};

class ConvergenceError : public Error {
   public:
    using Error::Error;
};

/// Too many realizations of a quenched average failed.
class AbortError : public Error {
   public:
    using Error::Error;
};

/// A run stopped at its compute budget; cached progress can be resumed.
class InterruptedError : public Error {
   public:
    using Error::Error;
};

class InsufficientDataError : public Error {
   public:
    using Error::Error;
};

class CacheCorruptionError : public Error {
   public:
    using Error::Error;
};

class ConfigError : public Error {
   public:
    using Error::Error;
};

class IoError : public Error {
   public:
    using Error::Error;
};

}  // namespace qdisorder
