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

#include "rankopt/sampler.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <thread>

#include "rankopt/error.h"
#include "rankopt/rng.h"

namespace rankopt {
namespace {

// Utility blocks use streams 0, 1, 2, ...; the other stages sit far above.
constexpr uint64_t kGroundTruthStream = uint64_t{1} << 48;
constexpr uint64_t kTransactionStream = kGroundTruthStream + 1;
constexpr uint64_t kRevenueStream = kGroundTruthStream + 2;

// Transactions merged by (offered, chosen).
struct Pattern {
  std::vector<int> offered;  // zero-based products
  int chosen = -1;           // zero-based, -1 for no purchase
  double weight = 0.0;       // count / number of transactions
};

class Likelihood {
 public:
  Likelihood(std::vector<Pattern> patterns, int n, double l2,
             std::vector<bool> free)
      : patterns_(std::move(patterns)), n_(n), l2_(l2), free_(std::move(free)) {}

  // Mean log-likelihood; fills the gradient over free products when given.
  double Evaluate(const std::vector<double>& nu,
                  std::vector<double>* grad) const {
    if (grad) grad->assign(n_, 0.0);
    double f = 0.0;
    std::vector<double> e;
    for (const Pattern& p : patterns_) {
      double top = 0.0;
      for (int j : p.offered) top = std::max(top, nu[j]);
      e.resize(p.offered.size());
      double z = std::exp(-top);
      for (size_t a = 0; a < p.offered.size(); ++a) {
        e[a] = std::exp(nu[p.offered[a]] - top);
        z += e[a];
      }
      const double chosen = p.chosen >= 0 ? nu[p.chosen] : 0.0;
      f += p.weight * (chosen - top - std::log(z));
      if (!grad) continue;
      for (size_t a = 0; a < p.offered.size(); ++a) {
        (*grad)[p.offered[a]] -= p.weight * e[a] / z;
      }
      if (p.chosen >= 0) (*grad)[p.chosen] += p.weight;
    }
    for (int i = 0; i < n_; ++i) {
      if (!free_[i]) {
        if (grad) (*grad)[i] = 0.0;
        continue;
      }
      f -= 0.5 * l2_ * nu[i] * nu[i];
      if (grad) (*grad)[i] -= l2_ * nu[i];
    }
    return f;
  }

 private:
  std::vector<Pattern> patterns_;
  int n_;
  double l2_;
  std::vector<bool> free_;
};

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

GroundTruth GenerateGroundTruth(int n_products, int m, uint64_t seed) {
  if (n_products < 1) throw InvalidInput("ground truth needs N >= 1");
  if (m < 1) throw InvalidInput("ground truth needs M >= 1");
  CounterRng rng(seed, kGroundTruthStream);
  GroundTruth g;
  g.n_products = n_products;
  for (int k = 0; k < m; ++k) {
    std::vector<ProductId> perm(n_products + 1);
    std::iota(perm.begin(), perm.end(), 1);
    for (int i = n_products; i > 0; --i) {
      std::swap(perm[i], perm[rng.Below(i + 1)]);
    }
    g.rankings.push_back(std::move(perm));
  }
  double total = 0.0;
  for (int k = 0; k < m; ++k) {
    g.weights.push_back(rng.Exponential());
    total += g.weights.back();
  }
  for (double& w : g.weights) w /= total;
  return g;
}

std::vector<Transaction> SimulateTransactions(const GroundTruth& truth,
                                              int n_transactions,
                                              double inclusion_prob,
                                              uint64_t seed) {
  if (n_transactions < 1) throw InvalidInput("need at least one transaction");
  if (!(inclusion_prob > 0.0 && inclusion_prob < 1.0)) {
    throw InvalidInput("inclusion probability must lie in (0, 1)");
  }
  const int n = truth.n_products;
  if (truth.rankings.empty() || truth.rankings.size() != truth.weights.size()) {
    throw InvalidInput("ground truth rankings and weights disagree");
  }
  CounterRng rng(seed, kTransactionStream);
  std::vector<Transaction> out(n_transactions);
  std::vector<bool> offered(n + 2);
  for (Transaction& t : out) {
    for (ProductId i = 1; i <= n; ++i) {
      offered[i] = rng.Uniform() < inclusion_prob;
      if (offered[i]) t.offered.push_back(i);
    }
    offered[n + 1] = true;
    double u = rng.Uniform();
    size_t k = 0;
    while (k + 1 < truth.weights.size() && u >= truth.weights[k]) {
      u -= truth.weights[k];
      ++k;
    }
    for (ProductId i : truth.rankings[k]) {
      if (offered[i]) {
        t.chosen = i;
        break;
      }
    }
  }
  return out;
}

std::vector<double> MnlChoiceProbabilities(
    const std::vector<double>& attraction,
    const std::vector<ProductId>& offered) {
  double top = 0.0;
  for (ProductId i : offered) top = std::max(top, attraction[i - 1]);
  std::vector<double> p;
  double z = std::exp(-top);
  for (ProductId i : offered) {
    p.push_back(std::exp(attraction[i - 1] - top));
    z += p.back();
  }
  p.push_back(std::exp(-top));
  for (double& v : p) v /= z;
  return p;
}

MnlFit FitMnl(const std::vector<Transaction>& transactions, int n_products,
              const MnlFitOptions& options) {
  const int n = n_products;
  if (n < 1) throw InvalidInput("MNL fit needs N >= 1");
  if (transactions.empty()) throw InvalidInput("MNL fit needs transactions");
  if (!(options.floor < 0.0 && options.ceiling > 0.0)) {
    throw InvalidInput("MNL fit needs floor < 0 < ceiling");
  }
  std::vector<int> times_offered(n, 0);
  std::vector<int> times_chosen(n, 0);
  std::map<std::pair<std::vector<int>, int>, int> counts;
  for (const Transaction& t : transactions) {
    std::vector<int> offered;
    for (ProductId i : t.offered) {
      if (i < 1 || i > n) throw InvalidInput("transaction offers a bad id");
      offered.push_back(i - 1);
      ++times_offered[i - 1];
    }
    int chosen = -1;
    if (t.chosen != n + 1) {
      if (!std::binary_search(t.offered.begin(), t.offered.end(), t.chosen)) {
        throw InvalidInput("transaction chooses a product not offered");
      }
      chosen = t.chosen - 1;
      ++times_chosen[chosen];
    }
    if (offered.empty()) continue;
    ++counts[{std::move(offered), chosen}];
  }
  const double total = static_cast<double>(transactions.size());
  std::vector<Pattern> patterns;
  for (const auto& [key, c] : counts) {
    patterns.push_back({key.first, key.second, c / total});
  }

  MnlFit fit;
  std::vector<bool> free(n, true);
  std::vector<double> nu(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (times_offered[i] == 0 || times_chosen[i] == 0) {
      free[i] = false;
      nu[i] = options.floor;
      fit.warnings.push_back(
          "product " + std::to_string(i + 1) +
          (times_offered[i] == 0 ? " never offered" : " never chosen") +
          "; attraction set to the floor");
    }
  }
  const Likelihood ll(std::move(patterns), n, options.l2, free);
  auto project = [&](std::vector<double>& v) {
    for (int i = 0; i < n; ++i) {
      v[i] = free[i] ? std::clamp(v[i], options.floor, options.ceiling)
                     : options.floor;
    }
  };
  auto projected_norm = [&](const std::vector<double>& v,
                            const std::vector<double>& g) {
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = v[i] + g[i];
    project(w);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (w[i] - v[i]) * (w[i] - v[i]);
    return std::sqrt(s);
  };

  std::vector<double> grad;
  double f = ll.Evaluate(nu, &grad);
  double step = 1.0;
  int iter = 0;
  double gnorm = projected_norm(nu, grad);
  while (gnorm > options.tolerance && iter < options.max_iterations) {
    ++iter;
    std::vector<double> next(n);
    double f_next = 0.0;
    double t = step;
    for (int tries = 0;; ++tries) {
      for (int i = 0; i < n; ++i) next[i] = nu[i] + t * grad[i];
      project(next);
      std::vector<double> d(n);
      for (int i = 0; i < n; ++i) d[i] = next[i] - nu[i];
      f_next = ll.Evaluate(next, nullptr);
      if (f_next >= f + 1e-4 * Dot(grad, d) || tries >= 60) break;
      t *= 0.5;
    }
    std::vector<double> g_next;
    f_next = ll.Evaluate(next, &g_next);
    std::vector<double> s(n), y(n);
    for (int i = 0; i < n; ++i) {
      s[i] = next[i] - nu[i];
      y[i] = grad[i] - g_next[i];
    }
    const double sy = Dot(s, y);
    step = sy > 1e-300 ? std::clamp(Dot(s, s) / sy, 1e-10, 1e10) : 1.0;
    const bool stalled = Dot(s, s) == 0.0;
    nu = std::move(next);
    f = f_next;
    grad = std::move(g_next);
    gnorm = projected_norm(nu, grad);
    if (stalled) break;
  }
  if (gnorm > options.tolerance) {
    fit.warnings.push_back("MNL fit stopped with gradient norm " +
                           std::to_string(gnorm));
  }
  fit.attraction = nu;
  fit.attraction.push_back(0.0);
  fit.iterations = iter;
  fit.gradient_norm = gnorm;
  fit.log_likelihood = f;
  return fit;
}

MnlFit FitMnl(const GroundTruth& truth, int n_transactions,
              double inclusion_prob, uint64_t seed,
              const MnlFitOptions& options) {
  return FitMnl(
      SimulateTransactions(truth, n_transactions, inclusion_prob, seed),
      truth.n_products, options);
}

std::vector<double> AssignRevenuesFromDraws(
    const std::vector<double>& attraction, std::vector<double> draws) {
  const int n = static_cast<int>(draws.size());
  if (static_cast<int>(attraction.size()) != n + 1) {
    throw InvalidInput("attraction needs N+1 entries");
  }
  std::sort(draws.begin(), draws.end());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return attraction[a] > attraction[b];
  });
  std::vector<double> revenues(n);
  for (int j = 0; j < n; ++j) revenues[order[j]] = draws[j];
  return revenues;
}

std::vector<double> AssignRevenues(const std::vector<double>& attraction,
                                   uint64_t seed) {
  if (attraction.size() < 2) throw InvalidInput("attraction needs N+1 entries");
  CounterRng rng(seed, kRevenueStream);
  std::vector<double> draws(attraction.size() - 1);
  for (double& d : draws) d = static_cast<double>(1 + rng.Below(10000));
  return AssignRevenuesFromDraws(attraction, std::move(draws));
}

void MnlCutoffModel::Validate() const {
  const int n = n_products();
  if (n < 1) throw InvalidInput("MNL model needs N >= 1");
  if (static_cast<int>(attraction.size()) != n + 1) {
    throw InvalidInput("MNL model needs N+1 attraction entries");
  }
  if (attraction.back() != 0.0) {
    throw InvalidInput("no-purchase attraction must be 0");
  }
  for (double v : attraction) {
    if (!std::isfinite(v)) throw InvalidInput("attraction must be finite");
  }
  if (rank_cutoff < 1 || rank_cutoff > n) {
    throw InvalidInput("rank cutoff must lie in [1, N]");
  }
}

UtilityMatrix SampleUtilities(const MnlCutoffModel& model, int k_tilde,
                              uint64_t seed, const SampleOptions& options) {
  model.Validate();
  if (k_tilde < 1) throw InvalidInput("need at least one utility sample");
  if (options.block_rows < 1) throw InvalidInput("block size must be positive");
  const int n = model.n_products();
  const int cutoff = model.rank_cutoff;
  UtilityMatrix u(k_tilde, n + 1);
  const int blocks = (k_tilde + options.block_rows - 1) / options.block_rows;

  auto fill_block = [&](int b) {
    CounterRng rng(seed, static_cast<uint64_t>(b));
    std::vector<double> products(n);
    const int end = std::min(k_tilde, (b + 1) * options.block_rows);
    for (int r = b * options.block_rows; r < end; ++r) {
      std::span<double> row = u.row(r);
      for (int c = 0; c <= n; ++c) row[c] = model.attraction[c] + rng.Gumbel();
      int above = 0;
      for (int c = 0; c < n; ++c) above += row[c] > row[n];
      if (above <= cutoff) continue;
      std::copy(row.begin(), row.begin() + n, products.begin());
      std::nth_element(products.begin(), products.begin() + cutoff,
                       products.end(), std::greater<>());
      const double next = products[cutoff];
      const double last =
          *std::min_element(products.begin(), products.begin() + cutoff);
      row[n] = 0.5 * (last + next);
    }
  };

  const int threads = std::clamp(options.threads, 1, blocks);
  if (threads == 1) {
    for (int b = 0; b < blocks; ++b) fill_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (int b = t; b < blocks; b += threads) fill_block(b);
      });
    }
    for (std::thread& th : pool) th.join();
  }
  return u;
}

GeneratedInstance GenerateInstance(const GeneratorConfig& config) {
  GroundTruth truth =
      GenerateGroundTruth(config.n_products, config.m_rankings, config.seed);
  MnlFit fit = FitMnl(truth, config.n_transactions, config.inclusion_prob,
                      config.seed, config.fit);
  MnlCutoffModel mnl{fit.attraction, config.rank_cutoff,
                     AssignRevenues(fit.attraction, config.seed)};
  Instance instance(config.n_products, mnl.revenues, config.budget,
                    config.exact_budget);
  UtilityMatrix training = SampleUtilities(mnl, config.k_tilde, config.seed);
  return {std::move(truth), std::move(fit), std::move(mnl),
          std::move(instance), std::move(training)};
}

}  // namespace rankopt
