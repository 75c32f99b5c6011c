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

#include "rankopt/core_model.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "rankopt/error.h"

namespace rankopt {
namespace {

// Neumaier summation; sums of up to 1e5 terms of 1/K must hit 1 to 1e-12.
double CompensatedSum(const std::vector<double>& v) {
  double sum = 0.0, c = 0.0;
  for (double a : v) {
    const double t = sum + a;
    if (std::abs(sum) >= std::abs(a)) {
      c += (sum - t) + a;
    } else {
      c += (a - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

bool NearlyTied(double a, double b) {
  return std::abs(a - b) <=
         kUtilityTieTolerance * std::max(std::abs(a), std::abs(b));
}

}  // namespace

Instance::Instance(int n_products, std::vector<double> revenues,
                   std::optional<int> budget, bool exact_budget)
    : n_(n_products),
      revenues_(std::move(revenues)),
      budget_(budget),
      exact_budget_(exact_budget) {
  if (n_ < 1) throw InvalidInput("n_products must be positive");
  if (static_cast<int>(revenues_.size()) == n_) revenues_.push_back(0.0);
  if (static_cast<int>(revenues_.size()) != n_ + 1) {
    throw InvalidInput("expected " + std::to_string(n_) + " revenues, got " +
                       std::to_string(revenues_.size()));
  }
  if (revenues_[n_] != 0.0) {
    throw InvalidInput("no-purchase revenue must be 0");
  }
  for (int i = 0; i < n_; ++i) {
    if (!std::isfinite(revenues_[i]) || revenues_[i] <= 0.0) {
      throw InvalidInput("revenue of product " + std::to_string(i + 1) +
                         " must be positive");
    }
    max_revenue_ = std::max(max_revenue_, revenues_[i]);
  }
  if (budget_ && (*budget_ < 1 || *budget_ > n_)) {
    throw InvalidInput("budget must lie in [1, " + std::to_string(n_) + "]");
  }
  if (!budget_) exact_budget_ = false;
}

Instance Instance::WithBudget(std::optional<int> budget, bool exact) const {
  return Instance(n_, revenues_, budget, exact);
}

Assortment Assortment::Empty(int n_products) {
  std::vector<double> v(n_products + 1, 0.0);
  v[n_products] = 1.0;
  return Assortment(std::move(v));
}

Assortment Assortment::FromProducts(int n_products,
                                    std::span<const ProductId> products) {
  Assortment a = Empty(n_products);
  for (ProductId i : products) {
    if (i < 1 || i > n_products + 1) {
      throw InvalidInput("product id " + std::to_string(i) + " out of range");
    }
    a.values_[i - 1] = 1.0;
  }
  return a;
}

Assortment Assortment::FromValues(int n_products, std::vector<double> values) {
  if (static_cast<int>(values.size()) == n_products) values.push_back(1.0);
  if (static_cast<int>(values.size()) != n_products + 1 ||
      values.back() != 1.0) {
    throw InvalidInput("assortment needs " + std::to_string(n_products) +
                       " entries (or N+1 ending in 1)");
  }
  for (double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidInput("assortment entries must lie in [0, 1]");
    }
  }
  return Assortment(std::move(values));
}

bool Assortment::IsBinary() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0 || v == 1.0; });
}

std::vector<ProductId> Assortment::Products() const {
  std::vector<ProductId> out;
  for (int i = 0; i + 1 < static_cast<int>(values_.size()); ++i) {
    if (values_[i] >= 0.5) out.push_back(i + 1);
  }
  return out;
}

RankingModel::RankingModel(Instance instance, std::vector<Ranking> rankings,
                           double dropped_mass)
    : instance_(std::move(instance)),
      rankings_(std::move(rankings)),
      dropped_mass_(dropped_mass) {
  const int n = instance_.n_products();
  if (rankings_.empty()) throw InvalidInput("model has no rankings");
  if (!(dropped_mass_ >= 0.0 && dropped_mass_ < 1.0)) {
    throw InvalidInput("dropped mass must lie in [0, 1)");
  }
  std::map<std::vector<ProductId>, int> seen;
  std::vector<double> mass;
  std::vector<char> used(n + 2, 0);
  for (int k = 0; k < size(); ++k) {
    const Ranking& r = rankings_[k];
    if (r.prefix.empty()) {
      throw InvalidInput("ranking " + std::to_string(k) + " has empty prefix");
    }
    for (ProductId i : r.prefix) {
      if (i < 1 || i > n) {
        throw InvalidInput("ranking " + std::to_string(k) +
                           " holds product id " + std::to_string(i) +
                           " outside 1.." + std::to_string(n));
      }
      if (used[i]) {
        throw InvalidInput("ranking " + std::to_string(k) +
                           " repeats product " + std::to_string(i));
      }
      used[i] = 1;
    }
    for (ProductId i : r.prefix) used[i] = 0;
    if (!(r.probability > 0.0 && r.probability <= 1.0)) {
      throw InvalidInput("ranking " + std::to_string(k) +
                         " probability outside (0, 1]");
    }
    auto [it, fresh] = seen.emplace(r.prefix, k);
    if (!fresh) {
      throw InvalidInput("rankings " + std::to_string(it->second) + " and " +
                         std::to_string(k) + " share a prefix");
    }
    mass.push_back(r.probability);
  }
  mass.push_back(dropped_mass_);
  const double total = CompensatedSum(mass);
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "probabilities plus dropped mass sum to " << total << ", not 1";
    throw InvalidInput(msg.str());
  }
}

int RankingModel::total_prefix_length() const {
  int total = 0;
  for (const Ranking& r : rankings_) total += r.length();
  return total;
}

RankingModel RankingModel::WithInstance(Instance instance) const {
  return RankingModel(std::move(instance), rankings_, dropped_mass_);
}

UtilityMatrix UtilityMatrix::Select(std::span<const int> rows) const {
  UtilityMatrix out(static_cast<int>(rows.size()), cols_);
  for (int r = 0; r < out.rows(); ++r) {
    std::copy(row(rows[r]).begin(), row(rows[r]).end(), out.row(r).begin());
  }
  return out;
}

std::optional<std::vector<ProductId>> PrefixOfRow(std::span<const double> row) {
  const int cols = static_cast<int>(row.size());
  std::vector<int> order(cols);
  std::iota(order.begin(), order.end(), 0);
  for (double u : row) {
    if (!std::isfinite(u)) return std::nullopt;
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return row[a] > row[b]; });
  for (int p = 0; p + 1 < cols; ++p) {
    if (NearlyTied(row[order[p]], row[order[p + 1]])) return std::nullopt;
  }
  std::vector<ProductId> prefix;
  for (int c : order) {
    if (c == cols - 1) break;
    prefix.push_back(c + 1);
  }
  return prefix;
}

RankingModel RankingsFromSamples(const Instance& instance,
                                 const UtilityMatrix& utilities,
                                 SampleDiagnostics* diagnostics) {
  const int n = instance.n_products();
  if (utilities.cols() != n + 1) {
    throw InvalidInput("utility rows must have " + std::to_string(n + 1) +
                       " entries");
  }
  if (utilities.rows() < 1) throw InvalidInput("no utility samples");
  SampleDiagnostics local;
  SampleDiagnostics& diag = diagnostics ? *diagnostics : local;
  diag = SampleDiagnostics{};

  std::map<std::vector<ProductId>, int> index;
  std::vector<std::vector<ProductId>> prefixes;
  std::vector<long long> counts;
  for (int r = 0; r < utilities.rows(); ++r) {
    auto prefix = PrefixOfRow(utilities.row(r));
    if (!prefix) {
      diag.rejected.push_back("row " + std::to_string(r) +
                              ": tied or non-finite utilities");
      continue;
    }
    ++diag.rows_accepted;
    if (prefix->empty()) {
      ++diag.rows_dropped;
      continue;
    }
    auto [it, fresh] =
        index.emplace(*prefix, static_cast<int>(prefixes.size()));
    if (fresh) {
      prefixes.push_back(std::move(*prefix));
      counts.push_back(0);
    }
    ++counts[it->second];
  }
  if (diag.rows_accepted == 0) {
    throw InvalidInput("every utility row was rejected");
  }
  if (prefixes.empty()) {
    throw InvalidInput("every sample ranks the no-purchase option first");
  }
  const double k_tilde = diag.rows_accepted;
  std::vector<Ranking> rankings;
  rankings.reserve(prefixes.size());
  for (size_t k = 0; k < prefixes.size(); ++k) {
    rankings.push_back({std::move(prefixes[k]), counts[k] / k_tilde});
  }
  return RankingModel(instance, std::move(rankings),
                      diag.rows_dropped / k_tilde);
}

double RevenueOf(const Instance& instance, const Ranking& ranking,
                 const Assortment& x) {
  for (ProductId i : ranking.prefix) {
    if (x[i] >= 0.5) return instance.revenue(i);
  }
  return 0.0;
}

void CheckFeasible(const Instance& instance, const Assortment& x) {
  if (x.n_products() != instance.n_products()) {
    throw InvalidInput("assortment size does not match the instance");
  }
  if (!instance.budget()) return;
  const int size = x.Cardinality();
  const int b = *instance.budget();
  if (size > b || (instance.exact_budget() && size != b)) {
    throw InvalidInput("assortment of " + std::to_string(size) +
                       " products violates budget " + std::to_string(b));
  }
}

double ExpectedRevenue(const RankingModel& model, const Assortment& x) {
  CheckFeasible(model.instance(), x);
  double total = 0.0;
  for (const Ranking& r : model.rankings()) {
    total += r.probability * RevenueOf(model.instance(), r, x);
  }
  return total;
}

}  // namespace rankopt
