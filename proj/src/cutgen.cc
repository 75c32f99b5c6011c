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

#include "rankopt/cutgen.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rankopt/error.h"
#include "rankopt/rng.h"

namespace rankopt {
namespace {

constexpr double kGridTolerance = 1e-9;
constexpr double kMergeTolerance = 1e-12;
constexpr double kSlopeTolerance = 1e-12;

std::string Format(double v) {
  std::ostringstream os;
  os.precision(12);
  os << (v == 0.0 ? 0.0 : v);
  return os.str();
}

// Breakpoints of a pooled piecewise-linear function: a treap keyed by
// breakpoint, each node carrying its slope increment, with subtree sums so
// the minimizer is found in O(log n).
class BreakpointHeap {
 public:
  explicit BreakpointHeap(int capacity) { nodes_.reserve(capacity); }

  int NewNode(double key, double inc) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({key, inc, inc, Mix64(id + 1), -1, -1, 1});
    return id;
  }

  int size(int t) const { return t < 0 ? 0 : nodes_[t].count; }

  // Inserts every node of `small` into `big`; returns the new root.
  int Meld(int big, int small) {
    if (size(big) < size(small)) std::swap(big, small);
    std::vector<int> stack;
    if (small >= 0) stack.push_back(small);
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      if (nodes_[t].left >= 0) stack.push_back(nodes_[t].left);
      if (nodes_[t].right >= 0) stack.push_back(nodes_[t].right);
      nodes_[t].left = nodes_[t].right = -1;
      Pull(t);
      big = Insert(big, t);
    }
    return big;
  }

  // Smallest key b with base + (increments of keys <= b) >= -tolerance,
  // or `fallback` when no such key exists.
  double FirstNonnegative(int t, double base, double fallback) const {
    double target = -kSlopeTolerance - base;  // increments needed
    if (target <= 0.0) return -1.0;           // caller handles "at zero"
    double found = fallback;
    while (t >= 0) {
      const Node& n = nodes_[t];
      const double left = n.left >= 0 ? nodes_[n.left].sum : 0.0;
      if (left >= target) {
        t = n.left;
      } else if (left + n.inc >= target) {
        found = n.key;
        break;
      } else {
        target -= left + n.inc;
        t = n.right;
      }
    }
    return found;
  }

 private:
  struct Node {
    double key;
    double inc;
    double sum;
    uint64_t priority;
    int left;
    int right;
    int count;
  };

  void Pull(int t) {
    Node& n = nodes_[t];
    n.sum = n.inc;
    n.count = 1;
    if (n.left >= 0) {
      n.sum += nodes_[n.left].sum;
      n.count += nodes_[n.left].count;
    }
    if (n.right >= 0) {
      n.sum += nodes_[n.right].sum;
      n.count += nodes_[n.right].count;
    }
  }

  // Splits t into keys < key and keys >= key.
  void Split(int t, double key, int* lo, int* hi) {
    if (t < 0) {
      *lo = *hi = -1;
      return;
    }
    if (nodes_[t].key < key) {
      Split(nodes_[t].right, key, &nodes_[t].right, hi);
      *lo = t;
    } else {
      Split(nodes_[t].left, key, lo, &nodes_[t].left);
      *hi = t;
    }
    Pull(t);
  }

  int Insert(int t, int node) {
    if (t < 0) return node;
    if (nodes_[node].priority > nodes_[t].priority) {
      Split(t, nodes_[node].key, &nodes_[node].left, &nodes_[node].right);
      Pull(node);
      return node;
    }
    if (nodes_[node].key < nodes_[t].key) {
      nodes_[t].left = Insert(nodes_[t].left, node);
    } else {
      nodes_[t].right = Insert(nodes_[t].right, node);
    }
    Pull(t);
    return t;
  }

  std::vector<Node> nodes_;
};

// A run of chain positions sharing one value of d.
struct PooledBlock {
  int first;
  int last;
  double base_slope;  // right derivative at d = 0 of the pooled function
  int root;
  double minimizer;
};

}  // namespace

RankingChain::RankingChain(const Instance& instance, const Ranking& ranking,
                           int ranking_index)
    : index_(ranking_index),
      n_(instance.n_products()),
      prefix_(ranking.prefix) {
  if (prefix_.empty()) throw InvalidInput("ranking has an empty prefix");
  for (ProductId i : prefix_) {
    if (i < 1 || i > n_) throw InvalidInput("prefix product out of range");
    revenues_.push_back(instance.revenue(i));
  }
  revenues_.push_back(0.0);
  levels_ = revenues_;
  std::sort(levels_.begin(), levels_.end());
  levels_.erase(std::unique(levels_.begin(), levels_.end()), levels_.end());
}

double RankingChain::Snap(double v) const {
  auto it = std::lower_bound(levels_.begin(), levels_.end(), v);
  if (it != levels_.end() && *it - v <= kGridTolerance) return *it;
  if (it != levels_.begin() && v - *(it - 1) <= kGridTolerance) {
    return *(it - 1);
  }
  return v;
}

std::vector<ChainPtr> BuildChains(const RankingModel& model) {
  std::vector<ChainPtr> chains;
  chains.reserve(model.size());
  for (int k = 0; k < model.size(); ++k) {
    chains.push_back(
        std::make_shared<RankingChain>(model.instance(), model.ranking(k), k));
  }
  return chains;
}

DualDelta DualDelta::Make(ChainPtr chain, std::vector<double> values) {
  if (!chain) throw InvalidInput("delta without a ranking");
  const int expected = chain->length() + 1;
  if (static_cast<int>(values.size()) != expected) {
    throw InvalidInput("delta needs " + std::to_string(expected) +
                       " entries, got " + std::to_string(values.size()));
  }
  const double top = chain->max_revenue();
  double prev = 0.0;
  for (double& v : values) {
    if (!std::isfinite(v) || v < prev - kGridTolerance ||
        v > top + kGridTolerance) {
      throw InvalidInput("delta leaves the chain-constrained set");
    }
    v = chain->Snap(std::clamp(v, 0.0, top));
    v = std::max(v, prev);
    prev = v;
  }
  return DualDelta(std::move(chain), std::move(values));
}

std::string DualDelta::ToString() const {
  std::string s;
  for (size_t i = 0; i < values_.size(); ++i) {
    if (i) s += ' ';
    s += Format(values_[i]);
  }
  return s;
}

double Cut::Evaluate(const Assortment& x) const {
  double v = intercept;
  for (const auto& [i, c] : coeffs) v += c * x[i];
  return v;
}

std::string Cut::ToString() const {
  std::string s = "intercept " + Format(intercept) + " coeffs";
  for (const auto& [i, c] : coeffs) {
    s += ' ' + std::to_string(i) + ':' + Format(c);
  }
  return s;
}

double JValue(const Assortment& x, const DualDelta& d) {
  const RankingChain& ch = d.chain();
  if (x.n_products() != ch.n_products()) {
    throw InvalidInput("assortment length does not match the ranking");
  }
  const int len = ch.length();
  double v = d(len + 1);
  for (int l = 1; l <= len; ++l) {
    const double coef =
        std::max(0.0, ch.revenue(l) - d(l)) - (d(l + 1) - d(l));
    v += coef * ch.x_at(x, l);
  }
  return v;
}

DualDelta Phase2Cut(const Assortment& x, const ChainPtr& chain) {
  const RankingChain& ch = *chain;
  if (x.n_products() != ch.n_products()) {
    throw InvalidInput("assortment length does not match the ranking");
  }
  const int len = ch.length();
  int star = len + 1;
  for (int l = 1; l <= len; ++l) {
    const double v = ch.x_at(x, l);
    if (v != 0.0 && v != 1.0) {
      throw InvalidInput("closed-form cut needs a binary assortment");
    }
    if (v == 1.0) {
      star = l;
      break;
    }
  }
  std::vector<double> d(len + 1, ch.max_revenue());
  for (int l = 1; l <= star; ++l) d[l - 1] = ch.revenue(star);
  return DualDelta::Make(chain, std::move(d));
}

DualDelta Phase1Cut(const Assortment& x, const ChainPtr& chain) {
  const RankingChain& ch = *chain;
  if (x.n_products() != ch.n_products()) {
    throw InvalidInput("assortment length does not match the ranking");
  }
  const int len = ch.length();
  for (int l = 1; l <= len; ++l) {
    const double v = ch.x_at(x, l);
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidInput("assortment entry outside [0, 1]");
    }
  }
  const double top = ch.max_revenue();

  // Piece l is (max(0, r_l - d) + d) x_l - d x_{l-1} with x_0 = 0 and
  // x_{L+1} = 1: slope -x_{l-1} left of r_l, then x_l - x_{l-1}.
  BreakpointHeap heap(len + 1);
  std::vector<PooledBlock> stack;
  stack.reserve(len + 1);
  auto minimizer = [&](const PooledBlock& b) {
    const double at = heap.FirstNonnegative(b.root, b.base_slope, top);
    return at < 0.0 ? 0.0 : std::min(at, top);
  };
  double prev_x = 0.0;
  for (int l = 1; l <= len + 1; ++l) {
    const double xl = ch.x_at(x, l);
    const double r = ch.revenue(l);
    PooledBlock b{l, l, 0.0, -1, 0.0};
    if (r > 0.0) {
      b.base_slope = -prev_x;
      if (xl > 0.0) b.root = heap.NewNode(r, xl);
    } else {
      b.base_slope = xl - prev_x;
    }
    b.minimizer = minimizer(b);
    stack.push_back(b);
    while (stack.size() >= 2 &&
           stack[stack.size() - 2].minimizer >
               stack.back().minimizer + kMergeTolerance) {
      PooledBlock top_block = stack.back();
      stack.pop_back();
      PooledBlock& prev = stack.back();
      prev.last = top_block.last;
      prev.base_slope += top_block.base_slope;
      prev.root = heap.Meld(prev.root, top_block.root);
      prev.minimizer = minimizer(prev);
    }
    prev_x = xl;
  }
  std::vector<double> d(len + 1);
  for (const PooledBlock& b : stack) {
    for (int l = b.first; l <= b.last; ++l) d[l - 1] = b.minimizer;
  }
  return DualDelta::Make(chain, std::move(d));
}

int TIndex(const DualDelta& d) {
  const RankingChain& ch = d.chain();
  for (int l = ch.length() + 1; l >= 1; --l) {
    if (d(l) <= ch.revenue(l)) return l;
  }
  return 1;  // not reached: the position of the top revenue qualifies
}

ParetoCheck IsParetoCandidate(const DualDelta& d) {
  const RankingChain& ch = d.chain();
  const int len = ch.length();
  ParetoCheck out;
  const int t = TIndex(d);
  if (t <= 1) out.violated.push_back(1);
  if (d(1) > ch.revenue(1)) out.violated.push_back(2);
  for (int l = 2; l <= len; ++l) {
    if (d(l) < ch.revenue(l) && d(l) != d(l + 1)) {
      out.violated.push_back(3);
      break;
    }
  }
  for (int l = t; l <= len; ++l) {
    if (d(l) != d(l + 1)) {
      out.violated.push_back(4);
      break;
    }
  }
  out.ok = out.violated.empty();
  return out;
}

DualDelta ParetoStep1(const DualDelta& d) {
  if (TIndex(d) > 1) return d;
  const double cap = d.chain().second_revenue();
  std::vector<double> v = d.values();
  for (double& e : v) e = std::min(e, cap);
  return DualDelta::Make(d.chain_ptr(), std::move(v));
}

DualDelta ParetoStep2(const DualDelta& d) {
  const double r1 = d.chain().revenue(1);
  if (d(1) <= r1) return d;
  std::vector<double> v = d.values();
  v[0] = r1;
  return DualDelta::Make(d.chain_ptr(), std::move(v));
}

DualDelta ParetoStep3(const DualDelta& d) {
  const RankingChain& ch = d.chain();
  const int len = ch.length();
  std::vector<double> v = d.values();
  for (int l = len; l >= 2; --l) {
    if (d(l) < ch.revenue(l)) v[l - 1] = std::min(ch.revenue(l), v[l]);
  }
  return DualDelta::Make(d.chain_ptr(), std::move(v));
}

DualDelta ParetoStep4(const DualDelta& d) {
  const RankingChain& ch = d.chain();
  const int len = ch.length();
  const int t = TIndex(d);
  double hat = d(t);
  for (int l = t + 1; l <= len + 1; ++l) hat = std::max(hat, ch.revenue(l));
  std::vector<double> v = d.values();
  for (double& e : v) e = std::min(e, hat);
  return DualDelta::Make(d.chain_ptr(), std::move(v));
}

DualDelta ParetoTransform(const DualDelta& d) {
  return ParetoStep4(ParetoStep3(ParetoStep2(ParetoStep1(d))));
}

Cut CutCoefficients(const DualDelta& d) {
  const RankingChain& ch = d.chain();
  const int len = ch.length();
  Cut cut;
  cut.ranking = ch.index();
  cut.intercept = d(len + 1);
  cut.coeffs.reserve(len);
  for (int l = 1; l <= len; ++l) {
    cut.coeffs.emplace_back(
        ch.product(l), std::max(0.0, ch.revenue(l) - d(l)) - (d(l + 1) - d(l)));
  }
  return cut;
}

DualTriplet ToDualTriplet(const DualDelta& d, double top_revenue) {
  const RankingChain& ch = d.chain();
  const int len = ch.length();
  const int p = ch.n_products() + 1;
  DualTriplet t;
  t.alpha.assign(p, 0.0);
  t.beta.assign(p, 0.0);
  t.gamma = top_revenue;
  for (int l = 1; l <= len + 1; ++l) {
    t.alpha[l - 1] = std::max(0.0, ch.revenue(l) - d(l));
  }
  for (int l = 1; l <= len; ++l) t.beta[l - 1] = d(l + 1) - d(l);
  t.beta[len] = top_revenue - d(len + 1);
  return t;
}

}  // namespace rankopt
