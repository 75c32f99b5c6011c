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

#include "rankopt/math_program.h"

#include <algorithm>
#include <cmath>

#include "rankopt/error.h"

namespace rankopt {

int MathProgram::AddVariable(Variable v) {
  if (v.lower > v.upper) {
    throw InvalidInput("variable " + v.name + " has lower > upper");
  }
  const int id = num_variables();
  if (v.tag.kind != VarKind::kOther) {
    auto [it, fresh] = tag_index_.emplace(v.tag.key(), id);
    if (!fresh) throw InvalidInput("duplicate variable tag for " + v.name);
  }
  variables_.push_back(std::move(v));
  return id;
}

int MathProgram::AddRow(Row row) {
  for (const LinearTerm& t : row.terms) {
    if (t.var < 0 || t.var >= num_variables()) {
      throw InvalidInput("row " + row.name + " references unknown variable " +
                         std::to_string(t.var));
    }
  }
  rows_.push_back(std::move(row));
  return num_rows() - 1;
}

int MathProgram::num_integer() const {
  return static_cast<int>(std::count_if(
      variables_.begin(), variables_.end(),
      [](const Variable& v) { return v.integer; }));
}

std::optional<int> MathProgram::Find(VarTag tag) const {
  auto it = tag_index_.find(tag.key());
  if (it == tag_index_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> MathProgram::VariablesOfKind(VarKind kind) const {
  std::vector<int> out;
  for (int j = 0; j < num_variables(); ++j) {
    if (variables_[j].tag.kind == kind) out.push_back(j);
  }
  return out;
}

double MathProgram::ObjectiveValue(std::span<const double> values) const {
  double total = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    if (variables_[j].objective != 0.0) {
      total += variables_[j].objective * values[j];
    }
  }
  return total;
}

double MathProgram::MaxViolation(std::span<const double> values) const {
  double worst = 0.0;
  for (int j = 0; j < num_variables(); ++j) {
    worst = std::max(worst, variables_[j].lower - values[j]);
    worst = std::max(worst, values[j] - variables_[j].upper);
  }
  for (const Row& row : rows_) {
    double activity = 0.0;
    for (const LinearTerm& t : row.terms) activity += t.coef * values[t.var];
    const double gap = activity - row.rhs;
    switch (row.sense) {
      case RowSense::kLessEqual:
        worst = std::max(worst, gap);
        break;
      case RowSense::kGreaterEqual:
        worst = std::max(worst, -gap);
        break;
      case RowSense::kEqual:
        worst = std::max(worst, std::abs(gap));
        break;
    }
  }
  return worst;
}

MathProgram MathProgram::Relaxed() const {
  MathProgram out = *this;
  for (Variable& v : out.variables_) v.integer = false;
  out.completion_ = nullptr;
  return out;
}

MathProgram LpRelaxation(const MathProgram& p) { return p.Relaxed(); }

}  // namespace rankopt
