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

#include <algorithm>

#include "doctest.h"
#include "fixtures.h"
#include "rankopt/error.h"
#include "rankopt/oracle.h"

namespace rankopt {
namespace {

TEST_CASE("simplex: single bound row") {
  DenseLp lp;
  lp.AddVariable(0.0, kInf, 1.0);
  lp.AddRow({1.0}, RowSense::kLessEqual, 3.0);
  const LpSolution s = SimplexSolve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(3.0));
}

TEST_CASE("simplex: textbook maximization") {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6).
  DenseLp lp;
  lp.AddVariable(0.0, kInf, 3.0);
  lp.AddVariable(0.0, kInf, 5.0);
  lp.AddRow({1, 0}, RowSense::kLessEqual, 4);
  lp.AddRow({0, 2}, RowSense::kLessEqual, 12);
  lp.AddRow({3, 2}, RowSense::kLessEqual, 18);
  const LpSolution s = SimplexSolve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(36.0));
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(6.0));
}

TEST_CASE("simplex: minimization with >= rows and equality") {
  // min x + y, x + 2y >= 4, x - y == 1 -> x = 2, y = 1.
  DenseLp lp;
  lp.maximize = false;
  lp.AddVariable(0.0, kInf, 1.0);
  lp.AddVariable(0.0, kInf, 1.0);
  lp.AddRow({1, 2}, RowSense::kGreaterEqual, 4);
  lp.AddRow({1, -1}, RowSense::kEqual, 1);
  const LpSolution s = SimplexSolve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(3.0));
}

TEST_CASE("simplex: free and upper-bounded-only variables") {
  // max -|t| style: max q s.t. q <= 5 - x, q <= 1 + x, x <= 10 free below.
  DenseLp lp;
  const int q = lp.AddVariable(-kInf, kInf, 1.0);
  const int x = lp.AddVariable(-kInf, 10.0, 0.0);
  std::vector<double> r1(2), r2(2);
  r1[q] = 1;
  r1[x] = 1;
  r2[q] = 1;
  r2[x] = -1;
  lp.AddRow(r1, RowSense::kLessEqual, 5);
  lp.AddRow(r2, RowSense::kLessEqual, 1);
  const LpSolution s = SimplexSolve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(3.0));
  CHECK(s.x[x] == doctest::Approx(2.0));
}

TEST_CASE("simplex: bounded variables flip") {
  // max x + y with x, y in [0, 1] and x + y <= 1.5.
  DenseLp lp;
  lp.AddVariable(0.0, 1.0, 1.0);
  lp.AddVariable(0.0, 1.0, 1.0);
  lp.AddRow({1, 1}, RowSense::kLessEqual, 1.5);
  const LpSolution s = SimplexSolve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(1.5));
}

TEST_CASE("simplex: negative lower bounds and negative rhs") {
  // min x, x >= -3 via bound, x <= -1 via row.
  DenseLp lp;
  lp.maximize = false;
  lp.AddVariable(-3.0, kInf, 1.0);
  lp.AddRow({1.0}, RowSense::kLessEqual, -1.0);
  const LpSolution s = SimplexSolve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(-3.0));
}

TEST_CASE("simplex: infeasible and unbounded are distinct") {
  DenseLp inf;
  inf.AddVariable(0.0, kInf, 1.0);
  inf.AddRow({1.0}, RowSense::kGreaterEqual, 5.0);
  inf.AddRow({1.0}, RowSense::kLessEqual, 3.0);
  CHECK(SimplexSolve(inf).status == LpStatus::kInfeasible);

  DenseLp unb;
  unb.AddVariable(0.0, kInf, 1.0);
  unb.AddVariable(0.0, kInf, 0.0);
  unb.AddRow({1.0, -1.0}, RowSense::kLessEqual, 1.0);
  CHECK(SimplexSolve(unb).status == LpStatus::kUnbounded);
}

TEST_CASE("simplex: redundant equality rows") {
  DenseLp lp;
  lp.AddVariable(0.0, kInf, 1.0);
  lp.AddVariable(0.0, kInf, 2.0);
  lp.AddRow({1, 1}, RowSense::kEqual, 2);
  lp.AddRow({2, 2}, RowSense::kEqual, 4);
  const LpSolution s = SimplexSolve(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.value == doctest::Approx(4.0));
}

TEST_CASE("simplex: Bland-only agrees with default pricing") {
  CounterRng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    DenseLp lp;
    const int n = 3 + static_cast<int>(rng.Below(6));
    for (int j = 0; j < n; ++j) {
      lp.AddVariable(0.0, rng.Below(2) ? kInf : 1.0 + rng.Below(3),
                     static_cast<double>(rng.Below(7)) - 2.0);
    }
    const int m = 2 + static_cast<int>(rng.Below(6));
    for (int i = 0; i < m; ++i) {
      std::vector<double> row(n);
      for (double& a : row) a = static_cast<double>(rng.Below(5));
      lp.AddRow(row, RowSense::kLessEqual, 1.0 + rng.Below(10));
    }
    SimplexOptions bland;
    bland.bland_only = true;
    const LpSolution a = SimplexSolve(lp);
    const LpSolution b = SimplexSolve(lp, bland);
    REQUIRE(a.status == b.status);
    if (a.status == LpStatus::kOptimal) {
      CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("inner LP on the two-product chain at a fractional point") {
  const RankingModel m = testing::TwoProductChain(10, 5);
  const Assortment x = Assortment::FromValues(2, {0.5, 0.5});
  CHECK(InnerLpValue(m.instance(), m.ranking(0), x) == doctest::Approx(7.5));
  CHECK(DualLpValue(m.instance(), m.ranking(0), x) == doctest::Approx(7.5));
}

TEST_CASE("inner LP at binary and empty x") {
  const RankingModel b = testing::InstanceB();
  const Instance& inst = b.instance();
  for (unsigned mask = 0; mask < 8; ++mask) {
    const Assortment x = testing::FromMask(3, mask);
    for (const Ranking& r : b.rankings()) {
      CHECK(InnerLpValue(inst, r, x) ==
            doctest::Approx(RevenueOf(inst, r, x)));
      CHECK(DualLpValue(inst, r, x) == doctest::Approx(RevenueOf(inst, r, x)));
    }
  }
  CHECK(InnerLpValue(inst, b.ranking(0), Assortment::Empty(3)) ==
        doctest::Approx(0.0));
}

TEST_CASE("primal and dual inner LP agree at random fractional x") {
  CounterRng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const RankingModel m =
        testing::RandomModel(rng, {.n = 7, .k = 1, .max_length = 7});
    const Assortment x = testing::RandomFractional(rng, 7);
    const double p = InnerLpValue(m.instance(), m.ranking(0), x);
    const double d = DualLpValue(m.instance(), m.ranking(0), x);
    CHECK(std::abs(p - d) <= 1e-7);
  }
}

TEST_CASE("full order puts the no-purchase option after the prefix") {
  const RankingModel b = testing::InstanceB();
  CHECK(FullOrder(b.instance(), b.ranking(1)) ==
        std::vector<ProductId>{2, 1, 4, 3});
}

TEST_CASE("enumeration on Instance B") {
  const EnumerationResult r = EnumerateOptimal(testing::InstanceB());
  CHECK(r.objective == doctest::Approx(100.0));
  CHECK(r.x.Products() == std::vector<ProductId>{1});
  CHECK(r.feasible_subsets == 8);

  const EnumerationResult r1 = EnumerateOptimal(testing::InstanceB(1));
  CHECK(r1.objective == doctest::Approx(100.0));
  CHECK(r1.feasible_subsets == 4);
}

TEST_CASE("enumeration respects an exact budget") {
  const RankingModel b = testing::InstanceB();
  const RankingModel b3 =
      b.WithInstance(b.instance().WithBudget(3, /*exact=*/true));
  const EnumerationResult r = EnumerateOptimal(b3);
  CHECK(r.feasible_subsets == 1);
  CHECK(r.objective == doctest::Approx(100.0));
  CHECK(r.x.Products() == std::vector<ProductId>{1, 2, 3});
}

TEST_CASE("enumeration cap") {
  CounterRng rng(1);
  const RankingModel m = testing::RandomModel(rng, {.n = 6, .k = 3});
  CHECK_THROWS_AS(EnumerateOptimal(m, {.max_products = 5}), InvalidInput);
}

TEST_CASE("enumeration is invariant to ranking order") {
  CounterRng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const RankingModel m = testing::RandomModel(rng, {.n = 8, .k = 12});
    std::vector<Ranking> reversed = m.rankings();
    std::reverse(reversed.begin(), reversed.end());
    const RankingModel r(m.instance(), reversed);
    const EnumerationResult a = EnumerateOptimal(m);
    const EnumerationResult b = EnumerateOptimal(r);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-12));
    CHECK(a.x == b.x);
    // Direct scan of every subset.
    double best = 0.0;
    for (unsigned long long mask = 0; mask < 256; ++mask) {
      best = std::max(best, ExpectedRevenue(m, testing::FromMask(8, mask)));
    }
    CHECK(a.objective == doctest::Approx(best).epsilon(1e-12));
  }
}

}  // namespace
}  // namespace rankopt
