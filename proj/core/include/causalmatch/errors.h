// Copyright 2026 The causalmatch Authors.
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

#ifndef CAUSALMATCH_ERRORS_H_
#define CAUSALMATCH_ERRORS_H_

#include <stdexcept>
#include <string>

namespace causalmatch {

// Every failure raised by the library derives from Error; kind() lets front
// ends map failures onto exit codes without string matching.
enum class ErrorKind {
  kConfig,       // invalid configuration or arguments
  kShape,        // incompatible matrix / vector dimensions
  kData,         // malformed or invalid input data
  kDegenerate,   // input valid in form but unusable (e.g. one treatment arm)
  kNumeric,      // conditioning or convergence failure
  kUnavailable,  // requested quantity needs data that is absent
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorKind::kConfig, what) {}
};

class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string& what)
      : Error(ErrorKind::kShape, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ErrorKind::kData, what) {}
};

class DegenerateError : public Error {
 public:
  explicit DegenerateError(const std::string& what)
      : Error(ErrorKind::kDegenerate, what) {}
};

class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what)
      : Error(ErrorKind::kNumeric, what) {}
};

class UnavailableError : public Error {
 public:
  explicit UnavailableError(const std::string& what)
      : Error(ErrorKind::kUnavailable, what) {}
};

}  // namespace causalmatch

#endif  // CAUSALMATCH_ERRORS_H_
