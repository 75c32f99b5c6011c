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

// Synthetic instances: a ground-truth mixture of random rankings produces
// transactions, an MNL model is fitted to them, revenues are drawn and
// matched to the fitted attractions, and utility samples are drawn from the
// MNL with a rank cutoff.
//
// Every random draw comes from CounterRng with a fixed stream per purpose,
// so a seed reproduces the same numbers on any platform and the utility
// rows do not depend on how many threads drew them.

#ifndef RANKOPT_SAMPLER_H_
#define RANKOPT_SAMPLER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankopt/core_model.h"

namespace rankopt {

struct GroundTruth {
  int n_products = 0;
  // Permutations of 1..N+1.
  std::vector<std::vector<ProductId>> rankings;
  std::vector<double> weights;
};

// Fisher-Yates permutations and normalized Exponential(1) weights.
GroundTruth GenerateGroundTruth(int n_products, int m, uint64_t seed);

struct Transaction {
  std::vector<ProductId> offered;  // products among 1..N, increasing
  ProductId chosen = 0;            // N+1 for no purchase
};

// Each product is offered independently with `inclusion_prob`; the customer
// follows a ranking drawn from the ground-truth weights.
std::vector<Transaction> SimulateTransactions(const GroundTruth& truth,
                                              int n_transactions,
                                              double inclusion_prob,
                                              uint64_t seed);

struct MnlFitOptions {
  double floor = -20.0;
  double ceiling = 20.0;
  // Stop when the projected gradient of the mean log-likelihood is this
  // small.
  double tolerance = 1e-6;
  int max_iterations = 20000;
  // Adds -l2 / 2 * |nu|^2 to the mean log-likelihood.
  double l2 = 0.0;
};

struct MnlFit {
  std::vector<double> attraction;  // N+1 entries, last 0
  std::vector<std::string> warnings;
  int iterations = 0;
  double gradient_norm = 0.0;
  double log_likelihood = 0.0;  // mean over transactions
};

// Maximum-likelihood MNL with the no-purchase attraction pinned at 0, by
// projected gradient ascent with Barzilai-Borwein steps and backtracking.
// Products never offered or never chosen sit at the floor with a warning.
MnlFit FitMnl(const std::vector<Transaction>& transactions, int n_products,
              const MnlFitOptions& options = {});

// Simulates the transactions and fits them.
MnlFit FitMnl(const GroundTruth& truth, int n_transactions,
              double inclusion_prob, uint64_t seed,
              const MnlFitOptions& options = {});

// MNL choice probabilities over the offered products and no purchase, in
// the order of `offered` followed by no purchase.
std::vector<double> MnlChoiceProbabilities(
    const std::vector<double>& attraction,
    const std::vector<ProductId>& offered);

// N uniform integers in 1..10000; the smallest goes to the largest
// attraction. Equal attractions are ordered by product id.
std::vector<double> AssignRevenues(const std::vector<double>& attraction,
                                   uint64_t seed);

// The assignment step alone, for given draws (N entries).
std::vector<double> AssignRevenuesFromDraws(
    const std::vector<double>& attraction, std::vector<double> draws);

struct MnlCutoffModel {
  std::vector<double> attraction;  // N+1 entries, last 0
  int rank_cutoff = 1;
  std::vector<double> revenues;    // N entries

  int n_products() const { return static_cast<int>(revenues.size()); }
  // Throws InvalidInput.
  void Validate() const;
};

struct SampleOptions {
  int block_rows = 1024;
  int threads = 1;
};

// Rows are attraction plus standard Gumbel noise. When more than L
// products beat no purchase, its utility is moved to the midpoint of the
// L-th and (L+1)-th largest product utilities. Row block b draws from
// stream (seed, b) whatever the thread count.
UtilityMatrix SampleUtilities(const MnlCutoffModel& model, int k_tilde,
                              uint64_t seed, const SampleOptions& options = {});

struct GeneratorConfig {
  int n_products = 50;
  int m_rankings = 5;
  int k_tilde = 5000;
  int rank_cutoff = 5;
  int n_transactions = 25000;
  double inclusion_prob = 0.05;
  uint64_t seed = 1;
  std::optional<int> budget;
  bool exact_budget = false;
  MnlFitOptions fit;
};

struct GeneratedInstance {
  GroundTruth truth;
  MnlFit fit;
  MnlCutoffModel mnl;
  Instance instance;
  UtilityMatrix training;
};

GeneratedInstance GenerateInstance(const GeneratorConfig& config);

}  // namespace rankopt

#endif  // RANKOPT_SAMPLER_H_
