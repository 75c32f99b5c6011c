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

// Solver backends. A backend loads a MathProgram into a handle; the handle
// accepts extra rows and solves, optionally calling back at each new
// incumbent so the caller can add rows that cut it off.
//
// The built-in backend solves LPs with the dense simplex and MIPs by
// depth-first enumeration of the integer variables. Rows over integer
// variables only prune the search; the continuous variables are filled in
// by the program's completion hook when it is set and checked, otherwise by
// one small LP per connected block of continuous variables.
//
// The file backend writes LP text, runs an external binary and reads back
// a solution file in either of two dialects:
//
//   Optimal - objective value 100      (then "index name value [dual]")
//   # Objective value = 100            (then "name value")
//
// A "# Status = infeasible" or "# Status = unbounded" line, or a first line
// starting with "Infeasible" or "Unbounded", reports those outcomes.

#ifndef RANKOPT_SOLVER_BACKEND_H_
#define RANKOPT_SOLVER_BACKEND_H_

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "rankopt/math_program.h"

namespace rankopt {

struct BackendCapabilities {
  std::string name;
  bool supports_lp = false;
  bool supports_mip = false;
  bool supports_lazy_cuts = false;
};

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded };
const char* ToString(SolveStatus s);

struct BackendSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  // Complete integer assignments evaluated (built-in MIP) or simplex
  // iterations (built-in LP); 0 when unknown.
  long long work = 0;
  int lazy_calls = 0;
  int lazy_rows = 0;
};

// Called with a candidate incumbent; returns rows it violates, or nothing
// to accept it.
using LazyRowSource = std::function<std::vector<Row>(std::span<const double>)>;

class BackendModel {
 public:
  virtual ~BackendModel() = default;
  const MathProgram& program() const { return program_; }
  // Throws InvalidInput on an unknown variable id.
  virtual void AddRows(std::vector<Row> rows);
  // The lazy source is ignored for pure LPs. Throws SolverFailure (or
  // CapacityExceeded) when the backend gives up.
  virtual BackendSolution Solve(const LazyRowSource& lazy = nullptr) = 0;

 protected:
  explicit BackendModel(MathProgram p) : program_(std::move(p)) {}
  MathProgram program_;
};

class SolverBackend {
 public:
  virtual ~SolverBackend() = default;
  virtual BackendCapabilities capabilities() const = 0;
  // Throws InvalidInput when the program needs integrality and the backend
  // has no MIP support.
  std::unique_ptr<BackendModel> Load(const MathProgram& p) const;

 protected:
  virtual std::unique_ptr<BackendModel> DoLoad(const MathProgram& p) const = 0;
};

struct BuiltinOptions {
  // Complete integer assignments the MIP search may evaluate.
  long long max_assignments = 1LL << 21;
  // Rows times columns of the dense LP tableau.
  long long max_lp_cells = 8'000'000;
  bool lp_only = false;
};

class BuiltinBackend : public SolverBackend {
 public:
  explicit BuiltinBackend(BuiltinOptions options = {}) : options_(options) {}
  BackendCapabilities capabilities() const override;

 protected:
  std::unique_ptr<BackendModel> DoLoad(const MathProgram& p) const override;

 private:
  BuiltinOptions options_;
};

inline constexpr const char* kSolverEnv = "RANKOPT_SOLVER";
inline constexpr const char* kSolverArgsEnv = "RANKOPT_SOLVER_ARGS";

struct FileBackendOptions {
  // Solver binary; empty means the RANKOPT_SOLVER environment variable.
  std::string binary;
  // Arguments with {lp} and {sol} placeholders; empty means the
  // RANKOPT_SOLVER_ARGS environment variable, then "{lp} {sol}".
  std::string args;
  // Where model and solution files go; empty means the system temp dir.
  std::string work_dir;
  bool keep_files = false;
};

class FileBackend : public SolverBackend {
 public:
  explicit FileBackend(FileBackendOptions options = {});
  BackendCapabilities capabilities() const override;
  const std::string& binary() const { return options_.binary; }

 protected:
  std::unique_ptr<BackendModel> DoLoad(const MathProgram& p) const override;

 private:
  FileBackendOptions options_;
};

struct ParsedSolution {
  SolveStatus status = SolveStatus::kInfeasible;
  double objective = 0.0;
  // Values by variable id; variables missing from the file are 0.
  std::vector<double> x;
};

// Throws InvalidInput on text in neither dialect or unknown names.
ParsedSolution ParseSolution(const std::string& text, const MathProgram& p);

// Writes the second dialect.
std::string FormatSolution(const MathProgram& p, SolveStatus status,
                           std::span<const double> x);

// Built-in backend unless `name` is "file".
std::unique_ptr<SolverBackend> MakeBackend(const std::string& name);

}  // namespace rankopt

#endif  // RANKOPT_SOLVER_BACKEND_H_
