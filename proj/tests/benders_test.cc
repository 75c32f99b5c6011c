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

#include <cmath>

#include "doctest.h"
#include "fixtures.h"
#include "rankopt/benders.h"
#include "rankopt/error.h"
#include "rankopt/formulations.h"
#include "rankopt/oracle.h"

namespace rankopt {
namespace {

double BaseLp(const RankingModel& m) {
  return SimplexSolve(ToDenseLp(LpRelaxation(BuildBaseMip(m)))).value;
}

TEST_CASE("initial cut is the constant top revenue") {
  const RankingModel m = testing::TwoProductChain(10, 5);
  const RankingChain chain(m.instance(), m.ranking(0), 0);
  const Cut c = InitialCut(chain);
  CHECK(c.intercept == 10.0);
  for (const auto& [i, v] : c.coeffs) CHECK(v == 0.0);
  const ChainPtr ptr = std::make_shared<RankingChain>(chain);
  const Cut d = CutCoefficients(DualDelta::Make(ptr, {10, 10, 10}));
  CHECK(c.intercept == d.intercept);
  CHECK(c.coeffs == d.coeffs);
  const RankingModel one(Instance(2, {3, 7}), {{{1}, 1.0}});
  CHECK(InitialCut(RankingChain(one.instance(), one.ranking(0))).intercept ==
        3.0);
}

TEST_CASE("Instance B: phase 1 bound matches the base relaxation") {
  const RankingModel b = testing::InstanceB();
  OuterState state(b);
  const Phase1Result r = RunPhase1(state, BuiltinBackend());
  CHECK(r.status == "done");
  CHECK(r.bound <= 112.5 + 1e-6);
  CHECK(std::abs(r.bound - 112.5) <= 1e-5);
  CHECK(r.x.size() == 3);
}

TEST_CASE("Instance B: two-phase optimum") {
  const SolveReport r = SolveTwoPhase(testing::InstanceB(), BuiltinBackend());
  CHECK(std::abs(r.objective - 100.0) <= 1e-6);
  CHECK((r.products == std::vector<ProductId>{1} ||
         r.products == std::vector<ProductId>{2} ||
         r.products == std::vector<ProductId>{1, 2}));
  REQUIRE(r.phase1_bound.has_value());
  CHECK(*r.phase1_bound >= r.objective - 1e-6);
  // Phase 1 cuts already certify the integer optimum here.
  CHECK(r.phase2_cuts == 0);
  CHECK(r.initial_cuts == 2);
  const SolveReport r1 =
      SolveTwoPhase(testing::InstanceB(1), BuiltinBackend());
  CHECK(std::abs(r1.objective - 100.0) <= 1e-6);
  CHECK(r1.products.size() == 1);
}

TEST_CASE("single ranking needs at most two cut rounds") {
  CounterRng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const RankingModel m =
        testing::RandomModel(rng, {.n = 6, .k = 1, .max_length = 6});
    OuterState state(m);
    const Phase1Result r = RunPhase1(state, BuiltinBackend());
    CHECK(r.rounds <= 2);
    CHECK(std::abs(r.bound - BaseLp(m)) <= 1e-5);
  }
}

TEST_CASE("x pinned by the budget: one round of cuts") {
  CounterRng rng(72);
  for (int trial = 0; trial < 10; ++trial) {
    RankingModel m = testing::RandomModel(rng, {.n = 5, .k = 12});
    m = m.WithInstance(m.instance().WithBudget(5, /*exact=*/true));
    OuterState state(m);
    const Phase1Result r = RunPhase1(state, BuiltinBackend());
    CHECK(r.rounds == 1);
    CHECK(std::abs(r.bound - ExpectedRevenue(
                                 m, Assortment::FromValues(
                                        5, std::vector<double>(5, 1.0)))) <=
          1e-6);
  }
}

TEST_CASE("random instance: two-phase matches enumeration") {
  CounterRng rng(73);
  for (int trial = 0; trial < 8; ++trial) {
    const RankingModel m =
        testing::RandomModel(rng, {.n = 10, .k = 30, .max_length = 5});
    const EnumerationResult want = EnumerateOptimal(m);
    const SolveReport r = SolveTwoPhase(m, BuiltinBackend());
    CHECK(std::abs(r.objective - want.objective) <= 1e-6);
    CHECK(*r.phase1_bound >= r.objective - 1e-6);
    CHECK(std::abs(*r.phase1_bound - BaseLp(m)) <= 1e-5);
  }
}

TEST_CASE("pooled cuts are valid upper bounds") {
  CounterRng rng(74);
  for (int trial = 0; trial < 6; ++trial) {
    const RankingModel m = testing::RandomModel(
        rng, {.n = 8, .k = 20, .max_length = 6, .budget = 3});
    OuterState state(m);
    RunPhase1(state, BuiltinBackend());
    RunPhase2(state, BuiltinBackend());
    for (const Cut& c : state.cuts()) {
      for (unsigned mask = 0; mask < 256; ++mask) {
        const Assortment x = testing::FromMask(8, mask);
        CHECK(c.Evaluate(x) >=
              RevenueOf(m.instance(), m.ranking(c.ranking), x) - 1e-9);
      }
    }
  }
}

TEST_CASE("without the repair step the answer is the same") {
  CounterRng rng(75);
  for (int trial = 0; trial < 6; ++trial) {
    const RankingModel m = testing::RandomModel(rng, {.n = 8, .k = 25});
    const SolveReport a = SolveTwoPhase(m, BuiltinBackend());
    const SolveReport b =
        SolveTwoPhase(m, BuiltinBackend(), {.pareto = false});
    CHECK(std::abs(a.objective - b.objective) <= 1e-6);
  }
}

TEST_CASE("phase 1 can be skipped") {
  CounterRng rng(76);
  const RankingModel m = testing::RandomModel(rng, {.n = 8, .k = 25});
  const SolveReport a =
      SolveTwoPhase(m, BuiltinBackend(), {.phase1 = Phase1Mode::kSkip});
  CHECK(a.phase1_status == "off");
  CHECK_FALSE(a.phase1_bound.has_value());
  CHECK(std::abs(a.objective - EnumerateOptimal(m).objective) <= 1e-6);
  const SolveReport b = SolveTwoPhase(m, BuiltinBackend({.max_lp_cells = 10}),
                                      {.phase1 = Phase1Mode::kIfSupported});
  CHECK(b.phase1_status == "skipped");
  CHECK(std::abs(b.objective - a.objective) <= 1e-6);
  CHECK_THROWS_AS(SolveTwoPhase(m, BuiltinBackend({.max_lp_cells = 10})),
                  CapacityExceeded);
}

TEST_CASE("runs are deterministic") {
  CounterRng rng(77);
  const RankingModel m = testing::RandomModel(rng, {.n = 9, .k = 30});
  const SolveReport a = SolveTwoPhase(m, BuiltinBackend());
  const SolveReport b = SolveTwoPhase(m, BuiltinBackend());
  CHECK(a.products == b.products);
  CHECK(a.objective == b.objective);
  CHECK(a.phase1_bound == b.phase1_bound);
  CHECK(a.phase1_cuts == b.phase1_cuts);
  CHECK(a.phase2_cuts == b.phase2_cuts);
}

TEST_CASE("the outer program is the one the cuts describe") {
  const RankingModel b = testing::InstanceB(2);
  OuterState state(b);
  const MathProgram p = state.Program(false);
  CHECK(p.num_variables() == 3 + 2);
  CHECK(p.num_rows() == 2 + 1);  // initial cuts and the budget
  CHECK(p.variable(state.q_var(1)).objective == 0.5);
  CHECK(p.variable(state.q_var(0)).tag == VarTag{VarKind::kQ, 0});
  CHECK_FALSE(state.AddCut(state.cuts()[0]));
}

TEST_CASE("lp-only backend cannot run phase 2") {
  CHECK_THROWS_AS(
      SolveTwoPhase(testing::InstanceB(), BuiltinBackend({.lp_only = true})),
      InvalidInput);
}

}  // namespace
}  // namespace rankopt
