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

#ifndef RANKOPT_TESTS_FIXTURES_H_
#define RANKOPT_TESTS_FIXTURES_H_

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "rankopt/core_model.h"
#include "rankopt/rng.h"

namespace rankopt::testing {

// Three products, r = (100, 100, 150), rankings 1>2>3 and 2>1, half each.
inline RankingModel InstanceB(std::optional<int> budget = std::nullopt) {
  return RankingModel(Instance(3, {100, 100, 150}, budget),
                      {{{1, 2, 3}, 0.5}, {{2, 1}, 0.5}});
}

// Single ranking 1 > 2 with the given revenues.
inline RankingModel TwoProductChain(double r1, double r2) {
  return RankingModel(Instance(2, {r1, r2}), {{{1, 2}, 1.0}});
}

inline RankingModel ThreeTens() {
  return RankingModel(Instance(3, {10, 10, 10}), {{{1, 2, 3}, 1.0}});
}

struct RandomSpec {
  int n = 6;
  int k = 10;
  int max_length = 4;
  // Revenues drawn from {1..revenue_levels} * 10 so ties are common.
  int revenue_levels = 6;
  std::optional<int> budget;
};

inline RankingModel RandomModel(CounterRng& rng, const RandomSpec& spec) {
  std::vector<double> revenues(spec.n);
  for (double& r : revenues) r = 10.0 * (1 + rng.Below(spec.revenue_levels));
  std::map<std::vector<ProductId>, double> mass;
  std::vector<std::vector<ProductId>> order;
  std::vector<double> weights;
  for (int k = 0; k < spec.k; ++k) {
    std::vector<ProductId> perm(spec.n);
    std::iota(perm.begin(), perm.end(), 1);
    for (int i = spec.n - 1; i > 0; --i) {
      std::swap(perm[i], perm[rng.Below(i + 1)]);
    }
    const int len = 1 + static_cast<int>(
                            rng.Below(std::min(spec.max_length, spec.n)));
    perm.resize(len);
    const double w = 0.1 + rng.Uniform();
    if (!mass.count(perm)) order.push_back(perm);
    mass[perm] += w;
  }
  double total = 0.0;
  for (const auto& p : order) total += mass[p];
  std::vector<Ranking> rankings;
  double acc = 0.0;
  for (size_t j = 0; j < order.size(); ++j) {
    double lambda = mass[order[j]] / total;
    if (j + 1 == order.size()) lambda = 1.0 - acc;
    acc += lambda;
    rankings.push_back({order[j], lambda});
  }
  return RankingModel(Instance(spec.n, revenues, spec.budget),
                      std::move(rankings));
}

// Fractional x in [0,1]^N; about a third of the entries are 0 or 1.
inline Assortment RandomFractional(CounterRng& rng, int n) {
  std::vector<double> v(n);
  for (double& x : v) {
    const uint64_t c = rng.Below(6);
    x = c == 0 ? 0.0 : c == 1 ? 1.0 : rng.Uniform();
  }
  return Assortment::FromValues(n, v);
}

inline Assortment FromMask(int n, unsigned long long mask) {
  std::vector<ProductId> s;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1ULL) s.push_back(i + 1);
  }
  return Assortment::FromProducts(n, s);
}

}  // namespace rankopt::testing

#endif  // RANKOPT_TESTS_FIXTURES_H_
