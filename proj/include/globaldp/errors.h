// Copyright 2026 The GlobalDP Authors
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

#ifndef GLOBALDP_ERRORS_H_
#define GLOBALDP_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace globaldp {

// Argument outside the mathematical domain of an operation (empty data,
// delta outside (0,1), negative noise scale, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Inconsistent experiment or protocol configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed dataset line. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A protocol message that cannot be processed (e.g. mismatched vector sizes
// at aggregation). Carries the round index when raised from the round loop.
class ProtocolError : public std::runtime_error {
 public:
  explicit ProtocolError(const std::string& what, int round = 0)
      : std::runtime_error(round > 0 ? "round " + std::to_string(round) +
                                           ": " + what
                                     : what),
        round_(round) {}

  int round() const { return round_; }

 private:
  int round_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace globaldp

#endif  // GLOBALDP_ERRORS_H_
