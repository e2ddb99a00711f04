// Copyright 2026 The Authors.
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

#ifndef COVAUCTION_ERRORS_HPP_
#define COVAUCTION_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace covauction {

// Bad user input: malformed files, inconsistent dimensions, values outside
// their documented domain. CLI exit code 1.
class InvalidInputError : public std::runtime_error {
 public:
  explicit InvalidInputError(const std::string& what)
      : std::runtime_error(what) {}
};

// Numerical failure inside the LP solver. CLI exit code 2.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// A quantity that is guaranteed by construction came out wrong (e.g. a
// non-monotone coverage curve from a deterministic solver). CLI exit code 3.
class InvariantViolationError : public std::runtime_error {
 public:
  explicit InvariantViolationError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace covauction

#endif  // COVAUCTION_ERRORS_HPP_
