// Copyright 2026 The Rankopt Authors
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

#ifndef RANKOPT_ERROR_H_
#define RANKOPT_ERROR_H_

#include <stdexcept>
#include <string>

namespace rankopt {

// Bad instance data, bad arguments, malformed files. CLI exit code 2.
class InvalidInput : public std::runtime_error {
 public:
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// A solve could not be completed (infeasible where feasibility is required,
// backend crash, capacity of the built-in backend exceeded). CLI exit code 3.
class SolverFailure : public std::runtime_error {
 public:
  explicit SolverFailure(const std::string& what) : std::runtime_error(what) {}
};

// The built-in backend refuses a problem that is too large for it.
class CapacityExceeded : public SolverFailure {
 public:
  explicit CapacityExceeded(const std::string& what) : SolverFailure(what) {}
};

}  // namespace rankopt

#endif  // RANKOPT_ERROR_H_
