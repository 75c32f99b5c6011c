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

#include "rankopt/benders.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "rankopt/error.h"

namespace rankopt {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

long long Key(double v) { return std::llround(v * 1e9); }

std::vector<double> ProductValues(std::span<const double> v, int n,
                                  bool binary) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = binary ? (v[i] >= 0.5 ? 1.0 : 0.0) : std::clamp(v[i], 0.0, 1.0);
  }
  return x;
}

}  // namespace

Cut InitialCut(const RankingChain& chain) {
  Cut c;
  c.ranking = chain.index();
  c.intercept = chain.max_revenue();
  for (ProductId i : chain.prefix()) c.coeffs.emplace_back(i, 0.0);
  return c;
}

OuterState::OuterState(const RankingModel& model)
    : model_(model), chains_(BuildChains(model)), seen_(model.size()) {
  for (const ChainPtr& ch : chains_) AddCut(InitialCut(*ch));
}

bool OuterState::AddCut(const Cut& cut) {
  std::vector<long long> key = {Key(cut.intercept)};
  for (const auto& [i, c] : cut.coeffs) {
    if (Key(c) == 0) continue;
    key.push_back(i);
    key.push_back(Key(c));
  }
  if (!seen_[cut.ranking].insert(std::move(key)).second) return false;
  cuts_.push_back(cut);
  return true;
}

Row OuterState::CutRow(const Cut& cut) const {
  Row row;
  row.name = "cut_" + std::to_string(cut.ranking) + "_" +
             std::to_string(cuts_.size());
  row.sense = RowSense::kLessEqual;
  row.rhs = cut.intercept;
  row.terms.push_back({q_var(cut.ranking), 1.0});
  for (const auto& [i, c] : cut.coeffs) {
    if (c != 0.0) row.terms.push_back({i - 1, -c});
  }
  return row;
}

MathProgram OuterState::Program(bool relaxed) const {
  MathProgram p("outer");
  const Instance& inst = model_.instance();
  for (ProductId i = 1; i <= inst.n_products(); ++i) {
    p.AddVariable({.name = "x_" + std::to_string(i),
                   .lower = 0.0,
                   .upper = 1.0,
                   .integer = !relaxed,
                   .tag = {VarKind::kX, i}});
  }
  for (int k = 0; k < model_.size(); ++k) {
    p.AddVariable({.name = "q_" + std::to_string(k),
                   .lower = 0.0,
                   .upper = kInf,
                   .objective = model_.ranking(k).probability,
                   .tag = {VarKind::kQ, k}});
  }
  for (size_t c = 0; c < cuts_.size(); ++c) {
    Row row = CutRow(cuts_[c]);
    row.name = "cut_" + std::to_string(cuts_[c].ranking) + "_" +
               std::to_string(c);
    p.AddRow(std::move(row));
  }
  if (inst.budget()) {
    Row row;
    row.name = "budget";
    row.sense = inst.exact_budget() ? RowSense::kEqual : RowSense::kLessEqual;
    row.rhs = *inst.budget();
    for (ProductId i = 1; i <= inst.n_products(); ++i) {
      row.terms.push_back({i - 1, 1.0});
    }
    p.AddRow(std::move(row));
  }
  return p;
}

Phase1Result RunPhase1(OuterState& state, const SolverBackend& backend,
                       const BendersOptions& options) {
  Phase1Result out;
  if (options.phase1 == Phase1Mode::kSkip) {
    out.status = "off";
    return out;
  }
  const auto start = Clock::now();
  const int n = state.model().instance().n_products();
  const int k_count = state.model().size();
  std::unique_ptr<BackendModel> handle = backend.Load(state.Program(true));
  while (true) {
    if (out.lp_solves >= options.max_rounds) {
      throw SolverFailure("phase 1 did not converge in " +
                          std::to_string(options.max_rounds) + " rounds");
    }
    BackendSolution sol;
    try {
      sol = handle->Solve();
    } catch (const CapacityExceeded& e) {
      if (options.phase1 == Phase1Mode::kIfSupported && out.lp_solves == 0) {
        out.status = "skipped";
        out.seconds = SecondsSince(start);
        return out;
      }
      throw;
    } catch (const SolverFailure& e) {
      throw SolverFailure("phase 1 round " + std::to_string(out.rounds + 1) +
                          ": " + e.what());
    }
    ++out.lp_solves;
    if (sol.status != SolveStatus::kOptimal) {
      throw SolverFailure("phase 1 round " + std::to_string(out.rounds + 1) +
                          ": LP " + ToString(sol.status));
    }
    const Assortment x =
        Assortment::FromValues(n, ProductValues(sol.x, n, false));
    std::vector<Row> rows;
    for (int k = 0; k < k_count; ++k) {
      const ChainPtr& chain = state.chains()[k];
      const DualDelta d = Phase1Cut(x, chain);
      const double j = JValue(x, d);
      if (sol.x[state.q_var(k)] <= j + options.epsilon) continue;
      const Cut cut = CutCoefficients(options.pareto ? ParetoTransform(d) : d);
      if (!state.AddCut(cut)) {
        throw SolverFailure("phase 1 round " + std::to_string(out.rounds + 1) +
                            ": violated cut for ranking " + std::to_string(k) +
                            " is already pooled");
      }
      rows.push_back(state.CutRow(cut));
    }
    if (rows.empty()) {
      out.bound = sol.objective;
      out.x.assign(sol.x.begin(), sol.x.begin() + n);
      break;
    }
    ++out.rounds;
    out.cuts += static_cast<int>(rows.size());
    handle->AddRows(std::move(rows));
  }
  out.ran = true;
  out.status = "done";
  out.seconds = SecondsSince(start);
  return out;
}

SolveReport RunPhase2(OuterState& state, const SolverBackend& backend,
                      const BendersOptions& options) {
  const auto start = Clock::now();
  const RankingModel& model = state.model();
  const int n = model.instance().n_products();
  SolveReport report;
  std::unique_ptr<BackendModel> handle = backend.Load(state.Program(false));

  auto separate = [&](std::span<const double> v) {
    const Assortment x =
        Assortment::FromValues(n, ProductValues(v, n, true));
    std::vector<Row> rows;
    for (int k = 0; k < model.size(); ++k) {
      const ChainPtr& chain = state.chains()[k];
      const DualDelta d = Phase2Cut(x, chain);
      if (v[state.q_var(k)] <= JValue(x, d) + options.epsilon) continue;
      const Cut cut = CutCoefficients(options.pareto ? ParetoTransform(d) : d);
      if (!state.AddCut(cut)) {
        throw SolverFailure("phase 2: violated cut for ranking " +
                            std::to_string(k) + " is already pooled");
      }
      rows.push_back(state.CutRow(cut));
    }
    if (!rows.empty()) ++report.phase2_rounds;
    report.phase2_cuts += static_cast<int>(rows.size());
    return rows;
  };

  BackendSolution sol;
  if (backend.capabilities().supports_lazy_cuts) {
    sol = handle->Solve(separate);
  } else {
    for (int round = 0;; ++round) {
      if (round >= options.max_rounds) {
        throw SolverFailure("phase 2 did not converge in " +
                            std::to_string(options.max_rounds) + " rounds");
      }
      sol = handle->Solve();
      if (sol.status != SolveStatus::kOptimal) break;
      std::vector<Row> rows = separate(sol.x);
      if (rows.empty()) break;
      handle->AddRows(std::move(rows));
    }
  }
  if (sol.status != SolveStatus::kOptimal) {
    throw SolverFailure(std::string("phase 2: outer program ") +
                        ToString(sol.status));
  }
  const Assortment x = Assortment::FromValues(n, ProductValues(sol.x, n, true));
  report.products = x.Products();
  report.objective = ExpectedRevenue(model, x);
  const double slack = options.epsilon * (1.0 + model.size());
  if (sol.objective < report.objective - slack ||
      sol.objective > report.objective + slack) {
    throw SolverFailure("phase 2: outer value " +
                        std::to_string(sol.objective) +
                        " disagrees with the revenue " +
                        std::to_string(report.objective));
  }
  report.phase2_seconds = SecondsSince(start);
  return report;
}

SolveReport SolveTwoPhase(const RankingModel& model,
                          const SolverBackend& backend,
                          const BendersOptions& options) {
  const Instance& inst = model.instance();
  if (inst.budget() &&
      (*inst.budget() < 0 || *inst.budget() > inst.n_products())) {
    throw InvalidInput("no assortment meets the budget");
  }
  OuterState state(model);
  const int initial = static_cast<int>(state.cuts().size());
  const Phase1Result p1 = RunPhase1(state, backend, options);
  SolveReport report = RunPhase2(state, backend, options);
  report.initial_cuts = initial;
  report.phase1_status = p1.status;
  if (p1.ran) report.phase1_bound = p1.bound;
  report.phase1_rounds = p1.rounds;
  report.phase1_cuts = p1.cuts;
  report.phase1_seconds = p1.seconds;
  return report;
}

}  // namespace rankopt
