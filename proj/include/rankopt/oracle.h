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

// Reference machinery used to check everything else: a dense bounded
// primal simplex, direct solves of the per-ranking revenue LP and its dual,
// and brute-force enumeration of assortments.

#ifndef RANKOPT_ORACLE_H_
#define RANKOPT_ORACLE_H_

#include <span>
#include <vector>

#include "rankopt/core_model.h"
#include "rankopt/math_program.h"

namespace rankopt {

struct DenseLp {
  bool maximize = true;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<RowSense> senses;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  int AddVariable(double lb, double ub, double cost);
  // `coefs` is padded with zeros up to num_vars().
  void AddRow(std::vector<double> coefs, RowSense sense, double rhs);
  // Throws InvalidInput on dimension mismatch or non-finite data.
  void Validate() const;
};

DenseLp ToDenseLp(const MathProgram& p);

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
const char* ToString(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> x;
  int iterations = 0;
};

struct SimplexOptions {
  double tolerance = 1e-9;
  int max_iterations = 200000;
  // Dantzig pricing until this many degenerate pivots in a row, then
  // Bland's rule for the rest of the solve.
  int degenerate_limit = 50;
  bool bland_only = false;
};

// Throws SolverFailure when the iteration guard trips.
LpSolution SimplexSolve(const DenseLp& lp, const SimplexOptions& options = {});

// Order of all N+1 products for a ranking: the prefix, the no-purchase
// option, then the remaining products by increasing id. Only the prefix and
// the no-purchase slot affect any revenue quantity.
std::vector<ProductId> FullOrder(const Instance& instance,
                                 const Ranking& ranking);

// Revenue LP of one ranking over all N+1 positions, primal form.
double InnerLpValue(const Instance& instance, const Ranking& ranking,
                    const Assortment& x);

// Its dual: min gamma + sum (alpha - beta) x over alpha, beta >= 0.
double DualLpValue(const Instance& instance, const Ranking& ranking,
                   const Assortment& x);

// Checks the dual constraints gamma + alpha_l - sum_{l' >= l} beta_l' >= r_l
// and nonnegativity, positions following FullOrder.
bool IsDualFeasible(const Instance& instance, const Ranking& ranking,
                    std::span<const double> alpha, std::span<const double> beta,
                    double gamma, double tolerance = 1e-9);

struct EnumerationOptions {
  int max_products = 20;
};

struct EnumerationResult {
  Assortment x;
  double objective = 0.0;
  long long feasible_subsets = 0;
};

// Scans every feasible subset in Gray-code order. Ties within 1e-9
// (relative) go to the lexicographically smallest sorted list of products.
// Throws InvalidInput when N exceeds options.max_products.
EnumerationResult EnumerateOptimal(const RankingModel& model,
                                   const EnumerationOptions& options = {});

}  // namespace rankopt

#endif  // RANKOPT_ORACLE_H_
