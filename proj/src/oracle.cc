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

#include "rankopt/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "rankopt/error.h"

namespace rankopt {
namespace {

double Solved(const LpSolution& s, const char* what) {
  if (s.status != LpStatus::kOptimal) {
    throw SolverFailure(std::string(what) + " LP ended " + ToString(s.status));
  }
  return s.value;
}

bool LexLess(const std::vector<ProductId>& a, const std::vector<ProductId>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

std::vector<ProductId> FullOrder(const Instance& instance,
                                 const Ranking& ranking) {
  const int n = instance.n_products();
  std::vector<ProductId> order = ranking.prefix;
  order.push_back(n + 1);
  std::vector<char> seen(n + 2, 0);
  for (ProductId i : order) seen[i] = 1;
  for (ProductId i = 1; i <= n; ++i) {
    if (!seen[i]) order.push_back(i);
  }
  return order;
}

double InnerLpValue(const Instance& instance, const Ranking& ranking,
                    const Assortment& x) {
  const std::vector<ProductId> order = FullOrder(instance, ranking);
  const int p = static_cast<int>(order.size());
  DenseLp lp;
  for (int l = 0; l < p; ++l) {
    lp.AddVariable(0.0, kInf, instance.revenue(order[l]));
  }
  lp.AddRow(std::vector<double>(p, 1.0), RowSense::kEqual, 1.0);
  for (int l = 0; l < p; ++l) {
    std::vector<double> cover(p, 0.0);
    for (int m = 0; m <= l; ++m) cover[m] = 1.0;
    lp.AddRow(std::move(cover), RowSense::kGreaterEqual, x[order[l]]);
    std::vector<double> cap(p, 0.0);
    cap[l] = 1.0;
    lp.AddRow(std::move(cap), RowSense::kLessEqual, x[order[l]]);
  }
  return Solved(SimplexSolve(lp), "inner primal");
}

double DualLpValue(const Instance& instance, const Ranking& ranking,
                   const Assortment& x) {
  const std::vector<ProductId> order = FullOrder(instance, ranking);
  const int p = static_cast<int>(order.size());
  // Columns: alpha_1..alpha_p, beta_1..beta_p, gamma.
  DenseLp lp;
  lp.maximize = false;
  for (int l = 0; l < p; ++l) lp.AddVariable(0.0, kInf, x[order[l]]);
  for (int l = 0; l < p; ++l) lp.AddVariable(0.0, kInf, -x[order[l]]);
  const int gamma = lp.AddVariable(-kInf, kInf, 1.0);
  for (int l = 0; l < p; ++l) {
    std::vector<double> row(lp.num_vars(), 0.0);
    row[gamma] = 1.0;
    row[l] = 1.0;
    for (int m = l; m < p; ++m) row[p + m] = -1.0;
    lp.AddRow(std::move(row), RowSense::kGreaterEqual,
              instance.revenue(order[l]));
  }
  return Solved(SimplexSolve(lp), "inner dual");
}

bool IsDualFeasible(const Instance& instance, const Ranking& ranking,
                    std::span<const double> alpha, std::span<const double> beta,
                    double gamma, double tolerance) {
  const std::vector<ProductId> order = FullOrder(instance, ranking);
  const int p = static_cast<int>(order.size());
  if (static_cast<int>(alpha.size()) != p ||
      static_cast<int>(beta.size()) != p) {
    return false;
  }
  double suffix = 0.0;
  for (int l = p - 1; l >= 0; --l) {
    if (alpha[l] < -tolerance || beta[l] < -tolerance) return false;
    suffix += beta[l];
    if (gamma + alpha[l] - suffix < instance.revenue(order[l]) - tolerance) {
      return false;
    }
  }
  return true;
}

EnumerationResult EnumerateOptimal(const RankingModel& model,
                                   const EnumerationOptions& options) {
  const Instance& inst = model.instance();
  const int n = inst.n_products();
  if (n > options.max_products) {
    throw InvalidInput("enumeration is capped at " +
                       std::to_string(options.max_products) +
                       " products; use the Benders method for N = " +
                       std::to_string(n));
  }
  const int budget = inst.budget().value_or(n);
  const bool exact = inst.exact_budget();

  // Rankings touched by each product, to update revenues after a flip.
  std::vector<std::vector<int>> touching(n + 1);
  for (int k = 0; k < model.size(); ++k) {
    for (ProductId i : model.ranking(k).prefix) touching[i].push_back(k);
  }
  std::vector<double> x(n + 1, 0.0);  // 1-based
  std::vector<double> revenue(model.size(), 0.0);
  double running = 0.0;
  int size = 0;

  auto exact_value = [&]() {
    double total = 0.0;
    for (int k = 0; k < model.size(); ++k) {
      total += model.ranking(k).probability * revenue[k];
    }
    return total;
  };
  auto products = [&]() {
    std::vector<ProductId> s;
    for (ProductId i = 1; i <= n; ++i) {
      if (x[i] != 0.0) s.push_back(i);
    }
    return s;
  };

  EnumerationResult best{Assortment::Empty(n), 0.0, 0};
  std::vector<ProductId> best_set;
  bool have_best = false;
  auto consider = [&]() {
    if (size > budget || (exact && size != budget)) return;
    ++best.feasible_subsets;
    if (have_best && running < best.objective - 1e-6 * (1.0 + best.objective)) {
      return;
    }
    const double value = exact_value();
    const double tie = 1e-9 * std::max(1.0, std::abs(best.objective));
    std::vector<ProductId> s = products();
    if (!have_best || value > best.objective + tie ||
        (value >= best.objective - tie && LexLess(s, best_set))) {
      have_best = true;
      best.objective = value;
      best_set = std::move(s);
    }
  };

  consider();
  const unsigned long long count = 1ULL << n;
  for (unsigned long long t = 1; t < count; ++t) {
    const ProductId flip = std::countr_zero(t) + 1;
    x[flip] = 1.0 - x[flip];
    size += x[flip] != 0.0 ? 1 : -1;
    for (int k : touching[flip]) {
      const Ranking& r = model.ranking(k);
      double v = 0.0;
      for (ProductId i : r.prefix) {
        if (x[i] != 0.0) {
          v = inst.revenue(i);
          break;
        }
      }
      running += r.probability * (v - revenue[k]);
      revenue[k] = v;
    }
    consider();
  }
  if (!have_best) {
    throw InvalidInput("no assortment satisfies the budget");
  }
  best.x = Assortment::FromProducts(n, best_set);
  return best;
}

}  // namespace rankopt
