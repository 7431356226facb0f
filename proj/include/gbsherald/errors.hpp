// Copyright 2026 The gbsherald Authors
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

namespace gbsherald {

/// Base class of every error thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad arguments, malformed specs, out-of-range indices. CLI exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A documented precondition on a value (e.g. normalization) does not hold.
class ContractError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : ValidationError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class NotFoundError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// The Fock cutoff discards more weight than the caller allows.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class DecompositionError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial sweep would exceed its size guard.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagree. CLI exit code 3.
class OracleMismatch : public Error {
 public:
  using Error::Error;
};

/// Optimization produced no usable result. CLI exit code 4.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace gbsherald
