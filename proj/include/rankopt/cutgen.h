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

// Cut generation for one ranking.
//
// For a ranking with prefix i_1..i_L (position L+1 is the no-purchase
// option, revenue 0) the revenue the ranking can earn at x is bounded by
//
//   J(x, d) = d_{L+1} + sum_{l <= L} (max(0, r_l - d_l) - (d_{l+1} - d_l)) x_l
//
// for every d with 0 <= d_1 <= ... <= d_{L+1} <= rmax, where rmax is the
// largest prefix revenue. The bound is tight at the minimizing d. At a
// fractional x the minimizer comes from pool-adjacent-violators on a chain of
// convex piecewise-linear pieces; at a binary x it has a closed form. A
// four-step repair then moves d to an undominated cut without changing its
// value at x.

#ifndef RANKOPT_CUTGEN_H_
#define RANKOPT_CUTGEN_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rankopt/core_model.h"

namespace rankopt {

// Revenue data of one ranking along positions 1..L+1.
class RankingChain {
 public:
  RankingChain(const Instance& instance, const Ranking& ranking,
               int ranking_index = 0);

  int index() const { return index_; }
  int n_products() const { return n_; }
  int length() const { return static_cast<int>(prefix_.size()); }
  // 1 <= l <= L+1; position L+1 is the no-purchase option.
  ProductId product(int l) const {
    return l <= length() ? prefix_[l - 1] : n_ + 1;
  }
  double revenue(int l) const { return revenues_[l - 1]; }
  const std::vector<ProductId>& prefix() const { return prefix_; }
  double max_revenue() const { return levels_.back(); }
  // Largest revenue level strictly below max_revenue().
  double second_revenue() const { return levels_[levels_.size() - 2]; }
  // Distinct revenues over the prefix and the no-purchase option, ascending.
  const std::vector<double>& levels() const { return levels_; }
  // Returns the level within 1e-9 of v, or v.
  double Snap(double v) const;
  // x at position l, 1 for l = L+1.
  double x_at(const Assortment& x, int l) const {
    return l <= length() ? x[prefix_[l - 1]] : 1.0;
  }

 private:
  int index_;
  int n_;
  std::vector<ProductId> prefix_;
  std::vector<double> revenues_;  // L+1 entries
  std::vector<double> levels_;
};

using ChainPtr = std::shared_ptr<const RankingChain>;

std::vector<ChainPtr> BuildChains(const RankingModel& model);

// A point of the chain-constrained set for one ranking.
class DualDelta {
 public:
  // Accepts values within 1e-9 of the set, snaps entries within 1e-9 of a
  // revenue level onto it and restores monotonicity. Throws InvalidInput
  // otherwise.
  static DualDelta Make(ChainPtr chain, std::vector<double> values);

  const RankingChain& chain() const { return *chain_; }
  const ChainPtr& chain_ptr() const { return chain_; }
  // 1 <= l <= L+1.
  double operator()(int l) const { return values_[l - 1]; }
  const std::vector<double>& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  bool operator==(const DualDelta& o) const { return values_ == o.values_; }
  std::string ToString() const;

 private:
  DualDelta(ChainPtr chain, std::vector<double> values)
      : chain_(std::move(chain)), values_(std::move(values)) {}
  ChainPtr chain_;
  std::vector<double> values_;
};

struct Cut {
  int ranking = 0;
  double intercept = 0.0;
  // One entry per prefix product, in prefix order.
  std::vector<std::pair<ProductId, double>> coeffs;

  double Evaluate(const Assortment& x) const;
  std::string ToString() const;
};

double JValue(const Assortment& x, const DualDelta& d);

// Minimizer at a binary x: d_l = r at the first offered position l* for
// l <= l*, rmax after. Throws InvalidInput if x is fractional on the prefix.
DualDelta Phase2Cut(const Assortment& x, const ChainPtr& chain);

// Minimizer at any x in [0,1]^N by pool-adjacent-violators. Flat minima
// take their lower endpoint; adjacent blocks merge when the left minimizer
// exceeds the right one by more than 1e-12.
DualDelta Phase1Cut(const Assortment& x, const ChainPtr& chain);

// max{l in 1..L+1 : d_l <= r_l}.
int TIndex(const DualDelta& d);

struct ParetoCheck {
  bool ok = true;
  std::vector<int> violated;  // property ids among 1..4
};

// 1: T > 1. 2: d_1 <= r_1. 3: for 2 <= l <= L, d_l < r_l implies
// d_l == d_{l+1}. 4: d_T == ... == d_{L+1}.
ParetoCheck IsParetoCandidate(const DualDelta& d);

// The four repair steps, exposed one by one for testing; each expects the
// properties the previous steps establish.
DualDelta ParetoStep1(const DualDelta& d);
DualDelta ParetoStep2(const DualDelta& d);
DualDelta ParetoStep3(const DualDelta& d);
DualDelta ParetoStep4(const DualDelta& d);

// Steps 1 to 4 in order.
DualDelta ParetoTransform(const DualDelta& d);

Cut CutCoefficients(const DualDelta& d);

// Dual multipliers over all N+1 positions in FullOrder (prefix, no-purchase,
// remaining products by id) for the ranking's revenue LP.
struct DualTriplet {
  std::vector<double> alpha;
  std::vector<double> beta;
  double gamma = 0.0;
};

// `top_revenue` is the largest revenue of any product.
DualTriplet ToDualTriplet(const DualDelta& d, double top_revenue);

}  // namespace rankopt

#endif  // RANKOPT_CUTGEN_H_
