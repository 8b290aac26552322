//
// Copyright 2026 The TextGuard Authors
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
//

#ifndef TEXTGUARD_ERRORS_H_
#define TEXTGUARD_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace textguard {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A malformed input record. `line` is 1-based; 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, std::size_t line,
             const std::string& message)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " +
              message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Token lists that are not position-aligned.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or violated precondition.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A training request that cannot be satisfied (e.g. a single-class dataset).
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Backend unreachable, timed out, or returned a non-2xx status.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Backend replied with a body that violates the wire protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace textguard

#endif  // TEXTGUARD_ERRORS_H_
