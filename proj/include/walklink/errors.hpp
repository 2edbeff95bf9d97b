// Copyright 2026 The Walklink Authors.
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

#ifndef WALKLINK_ERRORS_HPP_
#define WALKLINK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace walklink {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. The message names the file line when known.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, long line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Structurally valid input that violates a load-time invariant.
class LoadError : public Error {
 public:
  using Error::Error;
};

// Unknown entity id or mention.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Numerical failure (singular system, NaN loss).
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace walklink

#endif  // WALKLINK_ERRORS_HPP_
