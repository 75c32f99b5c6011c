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

// Products, rankings and assortments.
//
// Products are numbered 1..N and N+1 is the no-purchase option, which has
// revenue 0 and is always offered. A ranking is stored by its prefix: the
// products the customer prefers to buying nothing, best first. Whatever
// follows the no-purchase option never matters for the revenue.

#ifndef RANKOPT_CORE_MODEL_H_
#define RANKOPT_CORE_MODEL_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rankopt {

using ProductId = int;

class Instance {
 public:
  // `revenues` holds r_1..r_N, optionally followed by r_{N+1} which must
  // then be 0.
  Instance(int n_products, std::vector<double> revenues,
           std::optional<int> budget = std::nullopt,
           bool exact_budget = false);

  int n_products() const { return n_; }
  ProductId no_purchase() const { return n_ + 1; }
  // 1 <= i <= N+1.
  double revenue(ProductId i) const { return revenues_[i - 1]; }
  // Length N+1, last entry 0.
  const std::vector<double>& revenues() const { return revenues_; }
  double max_revenue() const { return max_revenue_; }

  std::optional<int> budget() const { return budget_; }
  // Sum of x equals the budget instead of being bounded by it.
  bool exact_budget() const { return exact_budget_; }
  Instance WithBudget(std::optional<int> budget, bool exact = false) const;

  bool operator==(const Instance& other) const = default;

 private:
  int n_;
  std::vector<double> revenues_;
  double max_revenue_ = 0.0;
  std::optional<int> budget_;
  bool exact_budget_ = false;
};

struct Ranking {
  std::vector<ProductId> prefix;
  double probability = 0.0;

  int length() const { return static_cast<int>(prefix.size()); }
  bool operator==(const Ranking& other) const = default;
};

// x over products 1..N+1 with x_{N+1} = 1. Entries may be fractional in LP
// contexts.
class Assortment {
 public:
  static Assortment Empty(int n_products);
  static Assortment FromProducts(int n_products,
                                 std::span<const ProductId> products);
  // `values` holds x_1..x_N, or x_1..x_{N+1} with x_{N+1} = 1.
  static Assortment FromValues(int n_products, std::vector<double> values);

  int n_products() const { return static_cast<int>(values_.size()) - 1; }
  double operator[](ProductId i) const { return values_[i - 1]; }
  const std::vector<double>& values() const { return values_; }
  bool IsBinary() const;
  // Products among 1..N with x_i >= 0.5, increasing.
  std::vector<ProductId> Products() const;
  int Cardinality() const { return static_cast<int>(Products().size()); }

  bool operator==(const Assortment& other) const = default;

 private:
  explicit Assortment(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

class RankingModel {
 public:
  // Validates: prefixes nonempty, distinct products in 1..N, no two rankings
  // with the same prefix, probabilities in (0, 1], and
  // sum(probabilities) + dropped_mass == 1 within 1e-12.
  RankingModel(Instance instance, std::vector<Ranking> rankings,
               double dropped_mass = 0.0);

  const Instance& instance() const { return instance_; }
  const std::vector<Ranking>& rankings() const { return rankings_; }
  const Ranking& ranking(int k) const { return rankings_[k]; }
  int size() const { return static_cast<int>(rankings_.size()); }
  // Probability of samples whose first choice was the no-purchase option.
  // Those rankings are removed and the others keep their weight.
  double dropped_mass() const { return dropped_mass_; }
  int total_prefix_length() const;

  RankingModel WithInstance(Instance instance) const;

  bool operator==(const RankingModel& other) const = default;

 private:
  Instance instance_;
  std::vector<Ranking> rankings_;
  double dropped_mass_;
};

// Row-major K x (N+1) matrix of utilities, one sample per row.
class UtilityMatrix {
 public:
  UtilityMatrix() = default;
  UtilityMatrix(int rows, int cols) : rows_(rows), cols_(cols),
                                      data_(static_cast<size_t>(rows) * cols) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  std::span<const double> row(int r) const {
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }
  std::span<double> row(int r) {
    return {data_.data() + static_cast<size_t>(r) * cols_,
            static_cast<size_t>(cols_)};
  }
  // Rows listed in `rows`, in that order.
  UtilityMatrix Select(std::span<const int> rows) const;

  bool operator==(const UtilityMatrix& other) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

inline constexpr double kUtilityTieTolerance = 1e-12;

struct SampleDiagnostics {
  int rows_accepted = 0;
  int rows_dropped = 0;  // no-purchase ranked first
  std::vector<std::string> rejected;  // one message per rejected row
};

// Sorts each row, cuts it at the no-purchase option and merges identical
// prefixes with mass 1/K each, K being the number of accepted rows. Rows
// containing two utilities equal up to kUtilityTieTolerance (relative) are
// rejected and reported. Rankings appear in order of first occurrence.
RankingModel RankingsFromSamples(const Instance& instance,
                                 const UtilityMatrix& utilities,
                                 SampleDiagnostics* diagnostics = nullptr);

// Prefix of a single utility row, or nullopt for a tie.
std::optional<std::vector<ProductId>> PrefixOfRow(std::span<const double> row);

// Revenue of the first prefix product offered in binary x, else 0.
double RevenueOf(const Instance& instance, const Ranking& ranking,
                 const Assortment& x);

// Throws InvalidInput if x breaks the budget.
void CheckFeasible(const Instance& instance, const Assortment& x);

double ExpectedRevenue(const RankingModel& model, const Assortment& x);

}  // namespace rankopt

#endif  // RANKOPT_CORE_MODEL_H_
