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

// Solver-agnostic maximization program: bounded variables, linear rows,
// integrality flags, and tags tying each variable back to the model.

#ifndef RANKOPT_MATH_PROGRAM_H_
#define RANKOPT_MATH_PROGRAM_H_

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace rankopt {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class RowSense { kLessEqual, kGreaterEqual, kEqual };

// x_i: a = product. y_{k,l}: a = ranking (0-based), b = position (1-based).
// z_E: a = index of E in the exclusion model. q_k: a = ranking.
enum class VarKind { kX, kY, kZ, kQ, kOther };

struct VarTag {
  VarKind kind = VarKind::kOther;
  int a = 0;
  int b = 0;
  bool operator==(const VarTag& o) const = default;
  auto key() const { return std::make_tuple(static_cast<int>(kind), a, b); }
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInf;
  bool integer = false;
  double objective = 0.0;
  VarTag tag;
  bool operator==(const Variable& o) const = default;
};

struct LinearTerm {
  int var;
  double coef;
  bool operator==(const LinearTerm& o) const = default;
};

struct Row {
  std::vector<LinearTerm> terms;
  RowSense sense = RowSense::kLessEqual;
  double rhs = 0.0;
  std::string name;
  bool operator==(const Row& o) const = default;
};

class MathProgram {
 public:
  // Fills the continuous entries of `values` with an optimal completion for
  // the integer entries already present. The built-in backend checks the
  // result against every row before trusting it.
  using Completion = std::function<void(std::span<double> values)>;

  MathProgram() = default;
  explicit MathProgram(std::string name) : name_(std::move(name)) {}

  // Throws InvalidInput on a repeated tag (kOther tags are exempt) or on
  // lower > upper.
  int AddVariable(Variable v);
  // Throws InvalidInput on an unknown variable id.
  int AddRow(Row row);

  const std::string& name() const { return name_; }
  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Row>& rows() const { return rows_; }
  const Variable& variable(int j) const { return variables_[j]; }
  int num_variables() const { return static_cast<int>(variables_.size()); }
  int num_rows() const { return static_cast<int>(rows_.size()); }
  int num_integer() const;
  bool has_integers() const { return num_integer() > 0; }
  std::optional<int> Find(VarTag tag) const;
  std::vector<int> VariablesOfKind(VarKind kind) const;

  double ObjectiveValue(std::span<const double> values) const;
  // Largest violation of rows and bounds at `values`.
  double MaxViolation(std::span<const double> values) const;

  const Completion& completion() const { return completion_; }
  void set_completion(Completion c) { completion_ = std::move(c); }
  void clear_completion() { completion_ = nullptr; }

  // Same variables and rows, integrality dropped, bounds kept.
  MathProgram Relaxed() const;

  // Structural equality (the completion hook is not compared).
  bool SameAs(const MathProgram& other) const {
    return variables_ == other.variables_ && rows_ == other.rows_;
  }

 private:
  std::string name_;
  std::vector<Variable> variables_;
  std::vector<Row> rows_;
  std::map<std::tuple<int, int, int>, int> tag_index_;
  Completion completion_;
};

MathProgram LpRelaxation(const MathProgram& p);

}  // namespace rankopt

#endif  // RANKOPT_MATH_PROGRAM_H_
