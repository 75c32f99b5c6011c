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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fixtures.h"
#include "rankopt/benders.h"
#include "rankopt/cli_eval.h"
#include "rankopt/cutgen.h"
#include "rankopt/formulations.h"
#include "rankopt/oracle.h"
#include "rankopt/sampler.h"
#include "rankopt/solver_backend.h"

namespace rankopt {
namespace {

using Clock = std::chrono::steady_clock;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Collects failures of one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  long long checks() const { return checks_; }
  std::string Summary() const {
    std::string s = std::to_string(checks_) + " checks";
    if (failed_) {
      s += ", " + std::to_string(failed_) + " failed:";
      for (const std::string& f : failures_) s += " [" + f + "]";
    }
    return s;
  }

 private:
  long long checks_ = 0;
  long long failed_ = 0;
  std::vector<std::string> failures_;
};

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double LpValue(const MathProgram& p) {
  return SimplexSolve(ToDenseLp(LpRelaxation(p))).value;
}

double MipValue(const MathProgram& p) {
  const BackendSolution s = BuiltinBackend().Load(p)->Solve();
  return s.status == SolveStatus::kOptimal ? s.objective : NAN;
}

ChainPtr ChainOf(const RankingModel& m, int k = 0) {
  return std::make_shared<RankingChain>(m.instance(), m.ranking(k), k);
}

// Random single-ranking model with N products and a prefix of length L.
RankingModel RandomChainModel(CounterRng& rng, int n, int len) {
  std::vector<double> revenues(n);
  for (double& r : revenues) r = 5.0 * (1 + rng.Below(8));
  std::vector<ProductId> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.Below(i + 1)]);
  perm.resize(len);
  return RankingModel(Instance(n, revenues), {{perm, 1.0}});
}

bool InDelta(const DualDelta& d) {
  const RankingChain& ch = d.chain();
  if (d(1) < 0.0) return false;
  for (int l = 1; l <= ch.length(); ++l) {
    if (d(l) > d(l + 1)) return false;
  }
  return d(ch.length() + 1) <= ch.max_revenue();
}

bool SameCut(const Cut& a, const Cut& b) {
  if (a.intercept != b.intercept || a.coeffs.size() != b.coeffs.size()) {
    return false;
  }
  for (size_t i = 0; i < a.coeffs.size(); ++i) {
    if (a.coeffs[i] != b.coeffs[i]) return false;
  }
  return true;
}

// Assortment over the prefix products of a chain from a mask.
Assortment PrefixMask(const RankingChain& ch, unsigned mask) {
  std::vector<ProductId> s;
  for (int l = 0; l < ch.length(); ++l) {
    if (mask >> l & 1U) s.push_back(ch.prefix()[l]);
  }
  std::sort(s.begin(), s.end());
  return Assortment::FromProducts(ch.n_products(), s);
}

bool Criterion1(std::string* detail) {
  const auto start = Clock::now();
  const RankingModel b = testing::InstanceB();
  const double base_mip = MipValue(BuildBaseMip(b));
  const double base_lp = LpValue(BuildBaseMip(b));
  const MathProgram xset = BuildXsetMip(BuildExclusionSets(b));
  const double xset_lp = LpValue(xset);
  const double xset_mip = MipValue(xset);
  const double seconds = SecondsSince(start);
  *detail = "base MIP " + Num(base_mip) + ", base LP " + Num(base_lp) +
            ", xset LP " + Num(xset_lp) + ", xset MIP " + Num(xset_mip) +
            ", " + Num(seconds) + " s";
  return std::abs(base_mip - 100.0) <= 1e-6 &&
         std::abs(base_lp - 112.5) <= 1e-6 && xset_lp < 112.5 - 1e-9 &&
         std::abs(xset_mip - 100.0) <= 1e-6 && seconds < 1.0;
}

bool Criterion2(std::string* detail) {
  using Coeffs = std::vector<std::pair<ProductId, double>>;
  struct Example {
    RankingModel model;
    std::vector<double> delta;
    std::vector<double> repaired;
    int property;
    double intercept;
    Coeffs coeffs;
    double repaired_intercept;
    Coeffs repaired_coeffs;
    std::function<DualDelta(const DualDelta&)> step;
  };
  const std::vector<Example> examples = {
      {testing::TwoProductChain(10, 5), {10, 10, 10}, {5, 5, 5}, 1, 10,
       {{1, 0}, {2, 0}}, 5, {{1, 5}, {2, 0}}, ParetoStep1},
      {testing::TwoProductChain(5, 10), {10, 10, 10}, {5, 10, 10}, 2, 10,
       {{1, 0}, {2, 0}}, 10, {{1, -5}, {2, 0}}, ParetoStep2},
      {testing::ThreeTens(), {0, 0, 10, 10}, {0, 10, 10, 10}, 3, 10,
       {{1, 10}, {2, 0}, {3, 0}}, 10, {{1, 0}, {2, 0}, {3, 0}}, ParetoStep3},
      {testing::TwoProductChain(10, 5), {5, 5, 10}, {5, 5, 5}, 4, 10,
       {{1, 5}, {2, -5}}, 5, {{1, 5}, {2, 0}}, ParetoStep4},
  };
  Check c;
  int index = 0;
  for (const Example& e : examples) {
    ++index;
    const std::string tag = "example " + std::to_string(index);
    const DualDelta d = DualDelta::Make(ChainOf(e.model), e.delta);
    const ParetoCheck pc = IsParetoCandidate(d);
    c.Expect(pc.violated == std::vector<int>{e.property}, tag + " property");
    const DualDelta t = ParetoTransform(d);
    c.Expect(t.values() == e.repaired, tag + " transform " + t.ToString());
    c.Expect(e.step(d).values() == e.repaired, tag + " single step");
    c.Expect(IsParetoCandidate(t).ok, tag + " repaired properties");
    const Cut before = CutCoefficients(d);
    c.Expect(before.intercept == e.intercept && before.coeffs == e.coeffs,
             tag + " cut " + before.ToString());
    const Cut after = CutCoefficients(t);
    c.Expect(after.intercept == e.repaired_intercept &&
                 after.coeffs == e.repaired_coeffs,
             tag + " repaired cut " + after.ToString());
  }
  *detail = c.Summary() +
            "; J = 5 + 5x1, J = 10 - 5x1, J = 10 + 10x1 -> 10, "
            "J = 10 + 5x1 - 5x2 -> 5 + 5x1";
  return c.ok();
}

struct TripleTrial {
  ChainPtr chain;
  Assortment x;
  DualDelta phase1;
};

bool Criterion3(std::vector<TripleTrial>* trials, std::string* detail) {
  const auto start = Clock::now();
  CounterRng rng(20260301);
  Check c;
  int longest = 0;
  for (int t = 0; t < 1200; ++t) {
    const int n = 1 + static_cast<int>(rng.Below(34));
    const int len = 1 + static_cast<int>(rng.Below(std::min(n, 30)));
    longest = std::max(longest, len);
    const RankingModel m = RandomChainModel(rng, n, len);
    const Assortment x = testing::RandomFractional(rng, n);
    const ChainPtr ch = ChainOf(m);
    const DualDelta d = Phase1Cut(x, ch);
    const double j = JValue(x, d);
    const double primal = InnerLpValue(m.instance(), m.ranking(0), x);
    const double dual = DualLpValue(m.instance(), m.ranking(0), x);
    c.Expect(std::abs(j - primal) <= 1e-7,
             "trial " + std::to_string(t) + ": " + Num(j) + " vs " + Num(primal));
    c.Expect(std::abs(j - dual) <= 1e-7,
             "trial " + std::to_string(t) + ": " + Num(j) + " vs dual " +
                 Num(dual));
    trials->push_back({ch, x, d});
  }
  const double seconds = SecondsSince(start);
  *detail = std::to_string(trials->size()) + " trials, L up to " +
            std::to_string(longest) + ", " + c.Summary() + ", " +
            Num(seconds) + " s";
  return c.ok() && seconds < 30.0;
}

bool Criterion4(std::string* detail) {
  CounterRng rng(20260302);
  Check c;
  int changed = 0;
  const int trials = 1500;
  for (int t = 0; t < trials; ++t) {
    const int len = 1 + static_cast<int>(rng.Below(10));
    const int n = len + static_cast<int>(rng.Below(3));
    const RankingModel m = RandomChainModel(rng, n, len);
    const ChainPtr ch = ChainOf(m);
    const double rmax = ch->max_revenue();
    std::vector<double> v(len + 1);
    for (double& e : v) {
      const uint64_t kind = rng.Below(4);
      if (kind == 0) {
        e = rng.Uniform() * rmax;
      } else if (kind == 1) {
        e = ch->levels()[rng.Below(ch->levels().size())];
      } else if (kind == 2) {
        e = ch->revenue(1 + static_cast<int>(rng.Below(len + 1)));
      } else {
        e = rng.Below(2) ? rmax : 0.0;
      }
    }
    std::sort(v.begin(), v.end());
    const DualDelta d = DualDelta::Make(ch, v);
    const DualDelta out = ParetoTransform(d);
    const std::string tag = "trial " + std::to_string(t) + " " + d.ToString();
    c.Expect(IsParetoCandidate(out).ok, tag + " properties");
    c.Expect(InDelta(out), tag + " membership");
    c.Expect(ParetoTransform(out) == out, tag + " idempotence");
    bool strict = false;
    for (unsigned mask = 0; mask < (1U << len); ++mask) {
      const Assortment x = PrefixMask(*ch, mask);
      const double a = JValue(x, out);
      const double b = JValue(x, d);
      c.Expect(a <= b + 1e-9, tag + " dominance");
      if (a < b - 1e-9) strict = true;
    }
    if (!SameCut(CutCoefficients(out), CutCoefficients(d))) {
      ++changed;
      c.Expect(strict, tag + " strict somewhere");
    }
  }
  *detail = std::to_string(trials) + " deltas, " + std::to_string(changed) +
            " changed by the repair, " + c.Summary();
  return c.ok();
}

bool Criterion5(const std::vector<TripleTrial>& trials, std::string* detail) {
  Check c;
  for (size_t t = 0; t < trials.size(); ++t) {
    const TripleTrial& tr = trials[t];
    c.Expect(std::abs(JValue(tr.x, ParetoTransform(tr.phase1)) -
                      JValue(tr.x, tr.phase1)) <= 1e-9,
             "phase 1 trial " + std::to_string(t));
    std::vector<double> rounded = tr.x.values();
    rounded.pop_back();
    for (double& v : rounded) v = v >= 0.5 ? 1.0 : 0.0;
    const Assortment xb = Assortment::FromValues(tr.x.n_products(), rounded);
    const DualDelta d2 = Phase2Cut(xb, tr.chain);
    c.Expect(std::abs(JValue(xb, ParetoTransform(d2)) - JValue(xb, d2)) <= 1e-9,
             "phase 2 trial " + std::to_string(t));
  }
  *detail = c.Summary();
  return c.ok();
}

bool Criterion6(std::string* detail) {
  const auto start = Clock::now();
  CounterRng rng(20260303);
  Check c;
  int solves = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 2 + static_cast<int>(rng.Below(11));
    const int k = 1 + static_cast<int>(rng.Below(50));
    const RankingModel base =
        testing::RandomModel(rng, {.n = n, .k = k, .max_length = n});
    for (std::optional<int> budget :
         {std::optional<int>(1), std::optional<int>((n + 1) / 2),
          std::optional<int>()}) {
      const RankingModel m =
          base.WithInstance(base.instance().WithBudget(budget));
      const double e = EnumerateOptimal(m).objective;
      const double b = MipValue(BuildBaseMip(m));
      const double x = MipValue(BuildXsetMip(BuildExclusionSets(m)));
      const double bd = SolveTwoPhase(m, BuiltinBackend()).objective;
      const std::string tag = "instance " + std::to_string(t) + " budget " +
                              (budget ? std::to_string(*budget) : "none");
      c.Expect(std::abs(b - e) <= 1e-6, tag + " base " + Num(b) + " vs " + Num(e));
      c.Expect(std::abs(x - e) <= 1e-6, tag + " xset " + Num(x) + " vs " + Num(e));
      c.Expect(std::abs(bd - e) <= 1e-6,
               tag + " benders " + Num(bd) + " vs " + Num(e));
      ++solves;
    }
  }
  const double seconds = SecondsSince(start);
  *detail = "100 instances x 3 budgets (" + std::to_string(solves) +
            " settings), " + c.Summary() + ", " + Num(seconds) + " s";
  return c.ok() && seconds < 120.0;
}

bool Criterion7(std::string* detail) {
  CounterRng rng(20260304);
  Check c;
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + static_cast<int>(rng.Below(8));
    const RankingModel m = testing::RandomModel(
        rng, {.n = n, .k = 5 + static_cast<int>(rng.Below(40)),
              .max_length = n, .revenue_levels = 4});
    const std::string tag = "instance " + std::to_string(t);
    const ExclusionModel e = BuildExclusionSets(m);
    const double base_lp = LpValue(BuildBaseMip(m));
    const double xset_lp = LpValue(BuildXsetMip(e));
    c.Expect(xset_lp <= base_lp + 1e-9,
             tag + " xset " + Num(xset_lp) + " > base " + Num(base_lp));

    const RankingModel one = m.WithInstance(m.instance().WithBudget(1));
    const double base1 = LpValue(BuildBaseMip(one));
    const double xset1 = LpValue(BuildXsetMip(BuildExclusionSets(one)));
    const double int1 = EnumerateOptimal(one).objective;
    c.Expect(std::abs(base1 - xset1) <= 1e-6, tag + " budget 1 LPs differ");
    c.Expect(std::abs(base1 - int1) <= 1e-6, tag + " budget 1 base LP fractional");
    c.Expect(std::abs(xset1 - int1) <= 1e-6, tag + " budget 1 xset LP fractional");

    // Counts from the definitions, independent of the builders.
    int sum_len = 0;
    std::set<std::vector<ProductId>> sets = {{}};
    std::set<std::pair<std::vector<ProductId>, ProductId>> pairs;
    for (const Ranking& r : m.rankings()) {
      sum_len += r.length();
      std::vector<ProductId> before;
      for (ProductId i : r.prefix) {
        std::vector<ProductId> sorted = before;
        std::sort(sorted.begin(), sorted.end());
        pairs.insert({sorted, i});
        before.push_back(i);
        std::vector<ProductId> ext = before;
        std::sort(ext.begin(), ext.end());
        sets.insert(ext);
      }
    }
    const int k = m.size();
    for (const RankingModel& mm : {m, one}) {
      const int extra = mm.instance().budget() ? 1 : 0;
      const MathProgram bp = BuildBaseMip(mm);
      const MathProgram xp = BuildXsetMip(BuildExclusionSets(mm));
      const ProgramSize bs{n + sum_len, 2 * sum_len + k + extra};
      const ProgramSize xs{n + static_cast<int>(sets.size()),
                           3 * static_cast<int>(pairs.size()) + extra};
      c.Expect(BaseMipSize(mm) == bs, tag + " base size formula");
      c.Expect(bp.num_variables() == bs.variables && bp.num_rows() == bs.rows,
               tag + " base program size");
      c.Expect(XsetMipSize(BuildExclusionSets(mm)) == xs,
               tag + " xset size formula");
      c.Expect(xp.num_variables() == xs.variables && xp.num_rows() == xs.rows,
               tag + " xset program size");
    }
  }
  *detail = "50 instances, " + c.Summary();
  return c.ok();
}

bool Criterion8(std::string* detail) {
  CounterRng rng(20260305);
  Check c;
  int points = 0;
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + static_cast<int>(rng.Below(12));
    const int len = 1 + static_cast<int>(rng.Below(n));
    const RankingModel m = RandomChainModel(rng, n, len);
    const ChainPtr ch = ChainOf(m);
    const unsigned all = 1U << n;
    std::vector<double> revenue(all);
    for (unsigned mask = 0; mask < all; ++mask) {
      revenue[mask] =
          RevenueOf(m.instance(), m.ranking(0), testing::FromMask(n, mask));
    }
    // Every binary x: value; a sample of cut points: validity at every x.
    const unsigned stride = all <= 256 ? 1 : all / 64 + 1;
    for (unsigned hat = 0; hat < all; ++hat) {
      const Assortment xh = testing::FromMask(n, hat);
      const DualDelta d = Phase2Cut(xh, ch);
      c.Expect(JValue(xh, d) == revenue[hat],
               "ranking " + std::to_string(t) + " mask " + std::to_string(hat));
      ++points;
      if (hat % stride != 0) continue;
      const Cut raw = CutCoefficients(d);
      const Cut repaired = CutCoefficients(ParetoTransform(d));
      for (unsigned mask = 0; mask < all; ++mask) {
        const Assortment x = testing::FromMask(n, mask);
        c.Expect(raw.Evaluate(x) >= revenue[mask] - 1e-9, "raw cut validity");
        c.Expect(repaired.Evaluate(x) >= revenue[mask] - 1e-9,
                 "repaired cut validity");
      }
    }
  }
  *detail = std::to_string(points) + " binary points, " + c.Summary();
  return c.ok();
}

bool Criterion9(std::string* detail) {
  Check c;
  struct Setting {
    int n, cutoff, rows;
  };
  for (const Setting& s :
       {Setting{50, 5, 10000}, Setting{20, 1, 5000}, Setting{10, 10, 5000},
        Setting{30, 3, 5000}}) {
    GeneratorConfig g;
    g.n_products = s.n;
    g.m_rankings = 5;
    g.k_tilde = s.rows;
    g.rank_cutoff = s.cutoff;
    g.n_transactions = 25000;
    g.seed = 7;
    const GeneratedInstance a = GenerateInstance(g);
    const GeneratedInstance b = GenerateInstance(g);
    const std::string tag = "N=" + std::to_string(s.n) +
                            " L=" + std::to_string(s.cutoff);
    c.Expect(a.training == b.training, tag + " utilities differ");
    const RankingModel ma = RankingsFromSamples(a.instance, a.training);
    const RankingModel mb = RankingsFromSamples(b.instance, b.training);
    c.Expect(ma == mb, tag + " rankings differ");
    int longest = 0;
    for (const Ranking& r : ma.rankings()) {
      longest = std::max(longest, r.length());
      c.Expect(r.length() <= s.cutoff, tag + " prefix too long");
    }
    if (s.n == 50) c.Expect(longest == 5, tag + " longest prefix " + std::to_string(longest));
    const UtilityMatrix threaded =
        SampleUtilities(a.mnl, s.rows, g.seed, {.threads = 4});
    c.Expect(threaded == a.training, tag + " thread count changes draws");
  }
  *detail = c.Summary();
  return c.ok();
}

bool Criterion10(std::string* detail) {
  BenchmarkConfig config;  // N=50, M=5, K~=5000, L=5, budget 3
  const std::vector<BenchmarkRow> rows = RunBenchmark(config, BuiltinBackend());
  bool ok = !rows.empty();
  std::string s;
  for (const BenchmarkRow& r : rows) {
    ok = ok && r.status == "ok" && r.variable_ratio > 1.0;
    s += r.method + " " + Num(r.seconds) + " s obj " + Num(r.objective) + "; ";
  }
  const BenchmarkRow& r = rows.front();
  *detail = "N=50 M=5 K~=5000 L=5 K=" + Num(r.rankings) + ", base vars " +
            Num(r.base_variables) + " xset vars " + Num(r.xset_variables) +
            " ratio " + Num(r.variable_ratio) + " (rows ratio " +
            Num(r.row_ratio) + "); " + s + "phase 1 " + r.phase1_status;
  return ok;
}

}  // namespace
}  // namespace rankopt

int main() {
  using namespace rankopt;
  int failed = 0;
  auto report = [&](int id, bool ok, const std::string& detail) {
    std::printf("criterion %d: %s  %s\n", id, ok ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  };
  auto run = [&](int id, const std::function<bool(std::string*)>& f) {
    std::string detail;
    bool ok = false;
    try {
      ok = f(&detail);
    } catch (const std::exception& e) {
      detail += std::string(" exception: ") + e.what();
    }
    report(id, ok, detail);
  };
  std::vector<TripleTrial> trials;
  run(1, Criterion1);
  run(2, Criterion2);
  run(3, [&](std::string* d) { return Criterion3(&trials, d); });
  run(4, Criterion4);
  run(5, [&](std::string* d) { return Criterion5(trials, d); });
  run(6, Criterion6);
  run(7, Criterion7);
  run(8, Criterion8);
  run(9, Criterion9);
  run(10, Criterion10);
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
