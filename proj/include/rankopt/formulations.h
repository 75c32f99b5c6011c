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

// Mixed-integer programs for the ranking-based assortment problem.
//
// The base program has one y variable per (ranking, prefix position). The
// exclusion-set program replaces them with one z variable per set of
// leading products shared by some ranking, so rankings that agree on their
// first few products share variables.

#ifndef RANKOPT_FORMULATIONS_H_
#define RANKOPT_FORMULATIONS_H_

#include <map>
#include <optional>
#include <vector>

#include "rankopt/core_model.h"
#include "rankopt/math_program.h"

namespace rankopt {

struct ExclusionPair {
  int set = 0;       // index of E
  ProductId product = 0;
  int extended = 0;  // index of E + {product}
  double weight = 0.0;
};

class ExclusionModel {
 public:
  const Instance& instance() const { return instance_; }
  // Sorted product lists; index 0 is the empty set.
  const std::vector<std::vector<ProductId>>& sets() const { return sets_; }
  const std::vector<ExclusionPair>& pairs() const { return pairs_; }
  int num_sets() const { return static_cast<int>(sets_.size()); }
  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  std::optional<int> IndexOf(std::vector<ProductId> set) const;

  // Throws InvalidInput when a structural invariant fails.
  void Validate(double total_probability) const;

 private:
  friend ExclusionModel BuildExclusionSets(const RankingModel& model);
  explicit ExclusionModel(Instance instance) : instance_(std::move(instance)) {}
  int Intern(std::vector<ProductId> set);

  Instance instance_;
  std::vector<std::vector<ProductId>> sets_;
  std::map<std::vector<ProductId>, int> index_;
  std::vector<ExclusionPair> pairs_;
  std::map<std::pair<int, ProductId>, int> pair_index_;
};

// Sets and pairs appear in order of first occurrence, rankings in index
// order and positions ascending; weights accumulate in the same order.
ExclusionModel BuildExclusionSets(const RankingModel& model);

// Variables x_1..x_N then y_{k,l} ranking by ranking. Rows per ranking:
// sum_l y <= 1, then x_{i_l} <= sum_{l' <= l} y and y_l <= x_{i_l} for each
// l. y >= 0 is a bound. A budget adds one last row. The completion hook
// sets y from binary x.
MathProgram BuildBaseMip(const RankingModel& model);

// Variables x_1..x_N then z_E in set order, z in [0, 1] as bounds and
// z_empty fixed to 0. Rows per pair (E, i): z_{E+i} - z_E >= 0,
// z_{E+i} - z_E <= x_i, x_i <= z_{E+i}. A budget adds one last row. The
// completion hook sets z_E = max_{j in E} x_j.
MathProgram BuildXsetMip(const ExclusionModel& exclusion);

struct ProgramSize {
  int variables = 0;
  int rows = 0;
  bool operator==(const ProgramSize& o) const = default;
};

// N + sum L_k variables, sum (2 L_k + 1) rows, plus one budget row.
ProgramSize BaseMipSize(const RankingModel& model);
// N + |sets| variables, 3 |pairs| rows, plus one budget row.
ProgramSize XsetMipSize(const ExclusionModel& exclusion);

// The base program plus, for every two rankings whose first L products
// form the same set, sum_{l <= L} y_{k,l} == sum_{l <= L} y_{k',l}. Each
// ranking is linked to the first ranking seen with that set. Quadratic in
// the worst case; meant for small cross-checks.
MathProgram BuildLinkedBaseMip(const RankingModel& model);

}  // namespace rankopt

#endif  // RANKOPT_FORMULATIONS_H_
