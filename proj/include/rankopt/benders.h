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

// Two-phase Benders decomposition.
//
// The outer program keeps x and one variable q_k per ranking with objective
// weight lambda_k; each ranking's revenue is bounded above by cuts
// q_k <= c0 + sum c_i x_i. Phase 1 solves the LP relaxation by adding cuts
// at fractional points. Phase 2 keeps those cuts and solves the integer
// program, adding cuts at each incumbent, through lazy callbacks when the
// backend has them and by repeated solves otherwise.

#ifndef RANKOPT_BENDERS_H_
#define RANKOPT_BENDERS_H_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rankopt/core_model.h"
#include "rankopt/cutgen.h"
#include "rankopt/math_program.h"
#include "rankopt/solver_backend.h"

namespace rankopt {

// Constant cut q_k <= max revenue of the prefix.
Cut InitialCut(const RankingChain& chain);

enum class Phase1Mode {
  kRun,
  // Skip phase 1 when the backend reports the LP too large.
  kIfSupported,
  kSkip,
};

struct BendersOptions {
  double epsilon = 1e-6;
  bool pareto = true;
  Phase1Mode phase1 = Phase1Mode::kRun;
  int max_rounds = 100000;
};

class OuterState {
 public:
  explicit OuterState(const RankingModel& model);

  const RankingModel& model() const { return model_; }
  const std::vector<ChainPtr>& chains() const { return chains_; }
  // Outer program with x binary, q_k in [0, inf) and every pooled cut.
  MathProgram Program(bool relaxed) const;
  int q_var(int k) const { return model_.instance().n_products() + k; }

  // Adds the cut unless an identical one (to 1e-9) is pooled. Returns
  // whether it was new.
  bool AddCut(const Cut& cut);
  const std::vector<Cut>& cuts() const { return cuts_; }
  Row CutRow(const Cut& cut) const;

 private:
  RankingModel model_;
  std::vector<ChainPtr> chains_;
  std::vector<Cut> cuts_;
  std::vector<std::set<std::vector<long long>>> seen_;
};

struct Phase1Result {
  bool ran = false;
  std::string status;  // "done", "skipped" or "off"
  std::vector<double> x;  // x_1..x_N
  double bound = 0.0;
  int rounds = 0;      // rounds that added cuts
  int lp_solves = 0;
  int cuts = 0;
  double seconds = 0.0;
};

struct SolveReport {
  std::vector<ProductId> products;
  double objective = 0.0;
  std::optional<double> phase1_bound;
  std::string phase1_status;
  int phase1_rounds = 0;
  int phase1_cuts = 0;
  int phase2_rounds = 0;
  int phase2_cuts = 0;
  int initial_cuts = 0;
  double phase1_seconds = 0.0;
  double phase2_seconds = 0.0;
};

// Throws SolverFailure with the round number when the backend fails.
Phase1Result RunPhase1(OuterState& state, const SolverBackend& backend,
                       const BendersOptions& options = {});

// Integer phase over the pooled cuts.
SolveReport RunPhase2(OuterState& state, const SolverBackend& backend,
                      const BendersOptions& options = {});

// Both phases from the initial cuts. Throws InvalidInput for a budget no
// assortment meets.
SolveReport SolveTwoPhase(const RankingModel& model,
                          const SolverBackend& backend,
                          const BendersOptions& options = {});

}  // namespace rankopt

#endif  // RANKOPT_BENDERS_H_
