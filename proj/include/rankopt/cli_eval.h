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

// Instance files, one entry point per solution method, out-of-sample
// evaluation of an assortment and the benchmark harness behind the command
// line tool.
//
// Instance JSON:
//   {"n_products": N, "revenues": [r_1..r_N], "budget": B | null,
//    "rankings": [{"prefix": [ids], "lambda": p}, ...]}
// with the optional fields "exact_budget" (bool) and "dropped_mass"
// (number). Product ids are 1-based.

#ifndef RANKOPT_CLI_EVAL_H_
#define RANKOPT_CLI_EVAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankopt/benders.h"
#include "rankopt/core_model.h"
#include "rankopt/formulations.h"
#include "rankopt/sampler.h"
#include "rankopt/solver_backend.h"

namespace rankopt {

// Throws InvalidInput on malformed text or an invalid model.
std::string ModelToJson(const RankingModel& model);
RankingModel ModelFromJson(std::string_view text);
RankingModel LoadModel(const std::string& path);
void SaveModel(const std::string& path, const RankingModel& model);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view text);

// Everything needed to redraw the samples behind a generated instance.
struct Sidecar {
  GeneratorConfig config;
  GroundTruth truth;
  MnlCutoffModel mnl;
  std::vector<std::string> warnings;
};

std::string SidecarToJson(const Sidecar& sidecar);
Sidecar SidecarFromJson(std::string_view text);

// Training rows exactly as generated.
UtilityMatrix TrainingUtilities(const Sidecar& sidecar);
// Independent rows from a seed derived from the generator seed.
UtilityMatrix ValidationUtilities(const Sidecar& sidecar, int rows);

enum class Method { kBenders, kBaseMip, kXsetMip, kEnumerate };

const char* ToString(Method method);
// Accepts benders, base-mip, xset-mip and enum.
std::optional<Method> ParseMethod(std::string_view name);

struct MethodResult {
  Method method = Method::kBenders;
  std::vector<ProductId> products;
  double objective = 0.0;
  double seconds = 0.0;
  // Filled for the Benders method.
  std::optional<SolveReport> benders;
  // Filled for the two compact formulations.
  std::optional<ProgramSize> size;
};

// The objective is the expected revenue of the returned assortment; a
// solver value further than tolerance * (1 + |objective|) from it raises
// SolverFailure.
MethodResult SolveWithMethod(const RankingModel& model, Method method,
                             const SolverBackend& backend,
                             const BendersOptions& options = {},
                             double tolerance = 1e-6);

// Revenue of the row's most preferred option among x and no purchase.
double RowRevenue(const Instance& instance, std::span<const double> row,
                  const Assortment& x);

struct GapReport {
  double training_objective = 0.0;   // SAA optimum on the training rows
  double validation_estimate = 0.0;  // mean revenue over validation rows
  double gap_percent = 0.0;
  int validation_rows = 0;
};

// gap = validation / training * 100, and 100 when both are 0. Throws
// InvalidInput for an empty validation set or a negative training value.
GapReport ApproximationGap(const Assortment& x,
                           const UtilityMatrix& validation,
                           const Instance& instance,
                           double training_objective);

struct FoldResult {
  std::vector<ProductId> products;
  GapReport gap;
};

struct CrossValidationReport {
  std::vector<FoldResult> folds;
  double mean_gap_percent = 0.0;
  double mean_validation = 0.0;
};

// Shuffles the rows, splits them into `folds` contiguous parts and, for each
// part, solves on the others and evaluates on it. Throws InvalidInput unless
// 2 <= folds <= rows.
CrossValidationReport CrossValidate(const Instance& instance,
                                    const UtilityMatrix& samples, int folds,
                                    uint64_t seed, Method method,
                                    const SolverBackend& backend,
                                    const BendersOptions& options = {});

struct BenchmarkConfig {
  int n_products = 50;
  int m_rankings = 5;
  int k_tilde = 5000;
  int rank_cutoff = 5;
  std::optional<int> budget = 3;
  int n_transactions = 25000;
  double inclusion_prob = 0.05;
  // One replication per seed.
  std::vector<uint64_t> seeds = {1};
  std::vector<Method> methods = {Method::kBenders, Method::kBaseMip,
                                 Method::kXsetMip};
  BendersOptions benders = {.phase1 = Phase1Mode::kIfSupported};
};

// One row per method, averaged over replications.
struct BenchmarkRow {
  std::string method;
  int n_products = 0;
  int m_rankings = 0;
  int k_tilde = 0;
  int rank_cutoff = 0;
  std::optional<int> budget;
  int replications = 0;
  double rankings = 0.0;  // distinct rankings K
  // "ok", or the first failure message.
  std::string status = "ok";
  double seconds = 0.0;
  double objective = 0.0;
  std::string phase1_status;
  double phase1_seconds = 0.0;
  double phase2_seconds = 0.0;
  double phase1_cuts = 0.0;
  double phase2_cuts = 0.0;
  double base_variables = 0.0;
  double base_rows = 0.0;
  double xset_variables = 0.0;
  double xset_rows = 0.0;
  // Base over exclusion-set counts.
  double variable_ratio = 0.0;
  double row_ratio = 0.0;
};

// Replications run one after another so timings do not compete.
std::vector<BenchmarkRow> RunBenchmark(const BenchmarkConfig& config,
                                       const SolverBackend& backend);

std::string BenchmarkCsv(const std::vector<BenchmarkRow>& rows);
std::string BenchmarkJson(const std::vector<BenchmarkRow>& rows);
// Fixed-width table for terminals.
std::string BenchmarkTable(const std::vector<BenchmarkRow>& rows);

}  // namespace rankopt

#endif  // RANKOPT_CLI_EVAL_H_
