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

// Dense tableau primal simplex with bounded variables.
//
// Every original variable is rewritten as offset + sign * v with v in
// [0, u] (free variables become a difference of two such columns). Rows get
// slacks, are flipped to a nonnegative right-hand side, and rows without a
// usable slack get an artificial column. Phase one drives the artificials to
// zero, phase two optimizes the real objective.

#include <algorithm>
#include <cmath>
#include <string>

#include "rankopt/error.h"
#include "rankopt/oracle.h"

namespace rankopt {

int DenseLp::AddVariable(double lb, double ub, double cost) {
  objective.push_back(cost);
  lower.push_back(lb);
  upper.push_back(ub);
  return num_vars() - 1;
}

void DenseLp::AddRow(std::vector<double> coefs, RowSense sense, double b) {
  coefs.resize(num_vars(), 0.0);
  rows.push_back(std::move(coefs));
  senses.push_back(sense);
  rhs.push_back(b);
}

void DenseLp::Validate() const {
  const int n = num_vars();
  if (static_cast<int>(lower.size()) != n ||
      static_cast<int>(upper.size()) != n) {
    throw InvalidInput("bound vectors do not match the objective length");
  }
  if (static_cast<int>(senses.size()) != num_rows() ||
      static_cast<int>(rhs.size()) != num_rows()) {
    throw InvalidInput("row data lengths disagree");
  }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(objective[j]) || std::isnan(lower[j]) ||
        std::isnan(upper[j]) || lower[j] == kInf || upper[j] == -kInf) {
      throw InvalidInput("bad objective or bound at column " +
                         std::to_string(j));
    }
  }
  for (int i = 0; i < num_rows(); ++i) {
    if (static_cast<int>(rows[i].size()) != n || !std::isfinite(rhs[i])) {
      throw InvalidInput("bad row " + std::to_string(i));
    }
    for (double a : rows[i]) {
      if (!std::isfinite(a)) {
        throw InvalidInput("non-finite entry in row " + std::to_string(i));
      }
    }
  }
}

DenseLp ToDenseLp(const MathProgram& p) {
  DenseLp lp;
  for (const Variable& v : p.variables()) {
    lp.AddVariable(v.lower, v.upper, v.objective);
  }
  for (const Row& row : p.rows()) {
    std::vector<double> coefs(lp.num_vars(), 0.0);
    for (const LinearTerm& t : row.terms) coefs[t.var] += t.coef;
    lp.AddRow(std::move(coefs), row.sense, row.rhs);
  }
  return lp;
}

const char* ToString(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

namespace {

struct Column {
  int orig;      // original variable, -1 for slacks and artificials
  double sign;   // contribution to the original variable
};

class Tableau {
 public:
  Tableau(int m, const SimplexOptions& opt) : m_(m), opt_(opt) {}

  int AddColumn(double upper) {
    upper_.push_back(upper);
    at_upper_.push_back(false);
    return static_cast<int>(upper_.size()) - 1;
  }
  int num_cols() const { return static_cast<int>(upper_.size()); }

  void Build(const std::vector<std::vector<double>>& a,
             const std::vector<double>& b, const std::vector<int>& basis) {
    t_ = a;
    beta_ = b;
    basis_ = basis;
    in_basis_.assign(num_cols(), -1);
    for (int i = 0; i < m_; ++i) in_basis_[basis_[i]] = i;
  }

  // Maximizes cost . v from the current basis. Returns false if unbounded.
  bool Optimize(const std::vector<double>& cost, int* iterations) {
    const int n = num_cols();
    d_ = cost;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost[basis_[i]];
      if (cb == 0.0) continue;
      for (int c = 0; c < n; ++c) d_[c] -= cb * t_[i][c];
    }
    const double tol = opt_.tolerance;
    int degenerate = 0;
    bool bland = opt_.bland_only;
    while (true) {
      if (++*iterations > opt_.max_iterations) {
        throw SolverFailure("simplex iteration guard tripped after " +
                            std::to_string(opt_.max_iterations) + " pivots");
      }
      int q = -1;
      double best = 0.0;
      for (int c = 0; c < n; ++c) {
        if (in_basis_[c] >= 0 || upper_[c] <= 0.0) continue;
        const double dc = d_[c];
        const bool eligible = at_upper_[c] ? dc < -tol : dc > tol;
        if (!eligible) continue;
        if (bland) {
          q = c;
          break;
        }
        if (std::abs(dc) > best) {
          best = std::abs(dc);
          q = c;
        }
      }
      if (q < 0) return true;

      const double dir = at_upper_[q] ? -1.0 : 1.0;
      double step = upper_[q];
      int leave = -1;
      bool leave_to_upper = false;
      double leave_pivot = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double change = -dir * t_[i][q];
        double limit;
        bool to_upper;
        if (change < -tol) {
          limit = std::max(0.0, beta_[i]) / -change;
          to_upper = false;
        } else if (change > tol && upper_[basis_[i]] < kInf) {
          limit = std::max(0.0, upper_[basis_[i]] - beta_[i]) / change;
          to_upper = true;
        } else {
          continue;
        }
        // Near ties with a bound flip keep the flip; near ties between rows
        // go to the lowest basic index (Bland) or the largest pivot.
        bool take = false;
        if (limit < step - 1e-12) {
          take = true;
        } else if (limit <= step + 1e-12 && leave >= 0) {
          take = bland ? basis_[i] < basis_[leave]
                       : std::abs(t_[i][q]) > std::abs(leave_pivot);
        }
        if (take) {
          step = std::min(step, limit);
          leave = i;
          leave_to_upper = to_upper;
          leave_pivot = t_[i][q];
        }
      }
      if (step == kInf) return false;

      if (step <= 1e-12) {
        if (++degenerate >= opt_.degenerate_limit) bland = true;
      } else {
        degenerate = 0;
      }
      for (int i = 0; i < m_; ++i) beta_[i] += -dir * t_[i][q] * step;

      if (leave < 0) {
        at_upper_[q] = !at_upper_[q];
        continue;
      }
      const double entering_value = (at_upper_[q] ? upper_[q] : 0.0) + dir * step;
      const int out = basis_[leave];
      at_upper_[out] = leave_to_upper;
      in_basis_[out] = -1;
      at_upper_[q] = false;
      Pivot(leave, q);
      beta_[leave] = entering_value;
    }
  }

  // Pivot column q into row r without moving any value.
  void Pivot(int r, int q) {
    const int n = num_cols();
    std::vector<double>& pr = t_[r];
    const double inv = 1.0 / pr[q];
    for (int c = 0; c < n; ++c) pr[c] *= inv;
    pr[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = t_[i][q];
      if (f == 0.0) continue;
      std::vector<double>& pi = t_[i];
      for (int c = 0; c < n; ++c) pi[c] -= f * pr[c];
      pi[q] = 0.0;
    }
    if (!d_.empty()) {
      const double f = d_[q];
      if (f != 0.0) {
        for (int c = 0; c < n; ++c) d_[c] -= f * pr[c];
        d_[q] = 0.0;
      }
    }
    basis_[r] = q;
    in_basis_[q] = r;
  }

  double Value(int c) const {
    if (in_basis_[c] >= 0) return beta_[in_basis_[c]];
    return at_upper_[c] ? upper_[c] : 0.0;
  }

  int m_;
  const SimplexOptions& opt_;
  std::vector<std::vector<double>> t_;
  std::vector<double> beta_;
  std::vector<int> basis_;
  std::vector<int> in_basis_;
  std::vector<double> upper_;
  std::vector<bool> at_upper_;
  std::vector<double> d_;
};

}  // namespace

LpSolution SimplexSolve(const DenseLp& lp, const SimplexOptions& options) {
  lp.Validate();
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  const double sense = lp.maximize ? 1.0 : -1.0;
  LpSolution out;

  std::vector<double> offset(n, 0.0);
  std::vector<Column> columns;
  Tableau tab(m, options);
  for (int j = 0; j < n; ++j) {
    const double lb = lp.lower[j], ub = lp.upper[j];
    if (lb > ub) return out;  // infeasible bounds
    if (lb > -kInf) {
      offset[j] = lb;
      columns.push_back({j, 1.0});
      tab.AddColumn(ub - lb);
    } else if (ub < kInf) {
      offset[j] = ub;
      columns.push_back({j, -1.0});
      tab.AddColumn(kInf);
    } else {
      columns.push_back({j, 1.0});
      tab.AddColumn(kInf);
      columns.push_back({j, -1.0});
      tab.AddColumn(kInf);
    }
  }
  const int structural = static_cast<int>(columns.size());

  std::vector<std::vector<double>> a(m);
  std::vector<double> b(m);
  std::vector<int> slack_of(m, -1);
  for (int i = 0; i < m; ++i) {
    double shift = 0.0;
    for (int j = 0; j < n; ++j) shift += lp.rows[i][j] * offset[j];
    b[i] = lp.rhs[i] - shift;
    if (lp.senses[i] != RowSense::kEqual) {
      slack_of[i] = tab.AddColumn(kInf);
      columns.push_back({-1, 0.0});
    }
  }
  std::vector<int> basis(m, -1);
  std::vector<int> artificials;
  const int before_art = tab.num_cols();
  // Decide artificials first so every row vector has its final width.
  std::vector<double> flip(m, 1.0);
  for (int i = 0; i < m; ++i) {
    double slack_coef = 0.0;
    if (lp.senses[i] == RowSense::kLessEqual) slack_coef = 1.0;
    if (lp.senses[i] == RowSense::kGreaterEqual) slack_coef = -1.0;
    if (b[i] < 0.0) flip[i] = -1.0;
    if (slack_of[i] >= 0 && slack_coef * flip[i] > 0.0) {
      basis[i] = slack_of[i];
    } else {
      basis[i] = tab.AddColumn(kInf);
      columns.push_back({-1, 0.0});
      artificials.push_back(basis[i]);
    }
  }
  const int total = tab.num_cols();
  for (int i = 0; i < m; ++i) {
    a[i].assign(total, 0.0);
    for (int c = 0; c < structural; ++c) {
      a[i][c] = flip[i] * lp.rows[i][columns[c].orig] * columns[c].sign;
    }
    if (slack_of[i] >= 0) {
      a[i][slack_of[i]] =
          flip[i] * (lp.senses[i] == RowSense::kLessEqual ? 1.0 : -1.0);
    }
    if (basis[i] >= before_art) a[i][basis[i]] = 1.0;
    b[i] *= flip[i];
  }
  tab.Build(a, b, basis);

  int iterations = 0;
  if (!artificials.empty()) {
    std::vector<double> cost(total, 0.0);
    for (int c : artificials) cost[c] = -1.0;
    tab.Optimize(cost, &iterations);
    double infeasibility = 0.0;
    for (int c : artificials) infeasibility += tab.Value(c);
    double scale = 1.0;
    for (double v : b) scale = std::max(scale, std::abs(v));
    if (infeasibility > 1e-7 * scale) {
      out.iterations = iterations;
      return out;
    }
    // Pivot basic artificials out where possible; the rest sit on
    // redundant rows and stay fixed at zero.
    for (int i = 0; i < m; ++i) {
      if (tab.basis_[i] < before_art) continue;
      int best = -1;
      double mag = 1e-9;
      for (int c = 0; c < before_art; ++c) {
        if (tab.in_basis_[c] < 0 && std::abs(tab.t_[i][c]) > mag) {
          mag = std::abs(tab.t_[i][c]);
          best = c;
        }
      }
      if (best < 0) continue;
      const double v = tab.Value(best);
      const int art = tab.basis_[i];
      tab.in_basis_[art] = -1;
      tab.at_upper_[best] = false;
      tab.d_.clear();
      tab.Pivot(i, best);
      tab.beta_[i] = v;
    }
    for (int c : artificials) tab.upper_[c] = 0.0;
  }

  std::vector<double> cost(total, 0.0);
  for (int c = 0; c < structural; ++c) {
    cost[c] = sense * lp.objective[columns[c].orig] * columns[c].sign;
  }
  const bool bounded = tab.Optimize(cost, &iterations);
  out.iterations = iterations;
  if (!bounded) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.x = offset;
  for (int c = 0; c < structural; ++c) {
    out.x[columns[c].orig] += columns[c].sign * tab.Value(c);
  }
  for (int j = 0; j < n; ++j) {
    // Snap values that drifted just past a bound.
    if (out.x[j] < lp.lower[j]) out.x[j] = lp.lower[j];
    if (out.x[j] > lp.upper[j]) out.x[j] = lp.upper[j];
    out.value += lp.objective[j] * out.x[j];
  }
  return out;
}

}  // namespace rankopt
