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

#include "rankopt/formulations.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rankopt/error.h"

namespace rankopt {
namespace {

std::string Name(const char* stem, int a) {
  return std::string(stem) + "_" + std::to_string(a);
}

std::string Name(const char* stem, int a, int b) {
  return Name(stem, a) + "_" + std::to_string(b);
}

void AddProductVariables(MathProgram& p, const Instance& inst) {
  for (ProductId i = 1; i <= inst.n_products(); ++i) {
    p.AddVariable({.name = Name("x", i),
                   .lower = 0.0,
                   .upper = 1.0,
                   .integer = true,
                   .tag = {VarKind::kX, i}});
  }
}

void AddBudgetRow(MathProgram& p, const Instance& inst) {
  if (!inst.budget()) return;
  Row row;
  row.name = "budget";
  row.sense = inst.exact_budget() ? RowSense::kEqual : RowSense::kLessEqual;
  row.rhs = *inst.budget();
  for (ProductId i = 1; i <= inst.n_products(); ++i) {
    row.terms.push_back({i - 1, 1.0});
  }
  p.AddRow(std::move(row));
}

// y ids per ranking, by position.
std::vector<std::vector<int>> AddBaseRows(MathProgram& p,
                                          const RankingModel& model) {
  const Instance& inst = model.instance();
  std::vector<std::vector<int>> y(model.size());
  for (int k = 0; k < model.size(); ++k) {
    const Ranking& r = model.ranking(k);
    for (int l = 1; l <= r.length(); ++l) {
      const ProductId i = r.prefix[l - 1];
      y[k].push_back(p.AddVariable({.name = Name("y", k, l),
                                    .lower = 0.0,
                                    .upper = kInf,
                                    .objective =
                                        r.probability * inst.revenue(i),
                                    .tag = {VarKind::kY, k, l}}));
    }
  }
  for (int k = 0; k < model.size(); ++k) {
    const Ranking& r = model.ranking(k);
    Row one{.terms = {}, .sense = RowSense::kLessEqual, .rhs = 1.0,
            .name = Name("one", k)};
    for (int id : y[k]) one.terms.push_back({id, 1.0});
    p.AddRow(std::move(one));
    for (int l = 1; l <= r.length(); ++l) {
      const int x = r.prefix[l - 1] - 1;
      Row cover{.terms = {}, .sense = RowSense::kLessEqual, .rhs = 0.0,
                .name = Name("cover", k, l)};
      cover.terms.push_back({x, 1.0});
      for (int m = 0; m < l; ++m) cover.terms.push_back({y[k][m], -1.0});
      p.AddRow(std::move(cover));
      p.AddRow({{{y[k][l - 1], 1.0}, {x, -1.0}}, RowSense::kLessEqual, 0.0,
                Name("offer", k, l)});
    }
  }
  return y;
}

std::vector<double> BinaryX(std::span<const double> v, int n) {
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = v[i] >= 0.5 ? 1.0 : 0.0;
  return x;
}

}  // namespace

std::optional<int> ExclusionModel::IndexOf(std::vector<ProductId> set) const {
  std::sort(set.begin(), set.end());
  auto it = index_.find(set);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int ExclusionModel::Intern(std::vector<ProductId> set) {
  std::sort(set.begin(), set.end());
  auto [it, fresh] = index_.emplace(set, num_sets());
  if (fresh) sets_.push_back(std::move(set));
  return it->second;
}

void ExclusionModel::Validate(double total_probability) const {
  if (sets_.empty() || !sets_[0].empty()) {
    throw InvalidInput("exclusion model must start with the empty set");
  }
  double first = 0.0;
  for (const ExclusionPair& p : pairs_) {
    if (p.set < 0 || p.set >= num_sets() || p.extended < 0 ||
        p.extended >= num_sets()) {
      throw InvalidInput("exclusion pair references an unknown set");
    }
    const auto& e = sets_[p.set];
    if (std::binary_search(e.begin(), e.end(), p.product)) {
      throw InvalidInput("continuation already in its exclusion set");
    }
    std::vector<ProductId> ext = e;
    ext.insert(std::upper_bound(ext.begin(), ext.end(), p.product), p.product);
    if (ext != sets_[p.extended]) {
      throw InvalidInput("extended set mismatch");
    }
    if (!(p.weight > 0.0)) throw InvalidInput("pair weight must be positive");
    if (p.set == 0) first += p.weight;
  }
  if (std::abs(first - total_probability) > 1e-9) {
    throw InvalidInput("first-choice weights do not sum to the ranking mass");
  }
  if (num_pairs() < num_sets() - 1) {
    throw InvalidInput("fewer pairs than nonempty sets");
  }
}

ExclusionModel BuildExclusionSets(const RankingModel& model) {
  ExclusionModel out(model.instance());
  out.Intern({});
  for (int k = 0; k < model.size(); ++k) {
    const Ranking& r = model.ranking(k);
    std::vector<ProductId> lead;
    int current = 0;
    for (int l = 0; l < r.length(); ++l) {
      const ProductId i = r.prefix[l];
      lead.push_back(i);
      const int next = out.Intern(lead);
      auto [it, fresh] =
          out.pair_index_.emplace(std::make_pair(current, i), out.num_pairs());
      if (fresh) out.pairs_.push_back({current, i, next, 0.0});
      out.pairs_[it->second].weight += r.probability;
      current = next;
    }
  }
  return out;
}

MathProgram BuildBaseMip(const RankingModel& model) {
  MathProgram p("base");
  const Instance& inst = model.instance();
  AddProductVariables(p, inst);
  const std::vector<std::vector<int>> y = AddBaseRows(p, model);
  AddBudgetRow(p, inst);

  const int n = inst.n_products();
  std::vector<std::vector<ProductId>> prefixes;
  for (const Ranking& r : model.rankings()) prefixes.push_back(r.prefix);
  p.set_completion([n, y, prefixes](std::span<double> v) {
    const std::vector<double> x = BinaryX(v, n);
    for (size_t k = 0; k < y.size(); ++k) {
      bool bought = false;
      for (size_t l = 0; l < y[k].size(); ++l) {
        const bool here = !bought && x[prefixes[k][l] - 1] == 1.0;
        v[y[k][l]] = here ? 1.0 : 0.0;
        bought = bought || here;
      }
    }
  });
  return p;
}

MathProgram BuildXsetMip(const ExclusionModel& e) {
  MathProgram p("xset");
  const Instance& inst = e.instance();
  const int n = inst.n_products();
  AddProductVariables(p, inst);
  std::vector<double> objective(e.num_sets(), 0.0);
  for (const ExclusionPair& pr : e.pairs()) {
    const double w = inst.revenue(pr.product) * pr.weight;
    objective[pr.extended] += w;
    objective[pr.set] -= w;
  }
  std::vector<int> z(e.num_sets());
  for (int s = 0; s < e.num_sets(); ++s) {
    z[s] = p.AddVariable({.name = Name("z", s),
                          .lower = 0.0,
                          .upper = s == 0 ? 0.0 : 1.0,
                          .objective = s == 0 ? 0.0 : objective[s],
                          .tag = {VarKind::kZ, s}});
  }
  for (int q = 0; q < e.num_pairs(); ++q) {
    const ExclusionPair& pr = e.pairs()[q];
    const int hi = z[pr.extended], lo = z[pr.set], x = pr.product - 1;
    p.AddRow({{{hi, 1.0}, {lo, -1.0}}, RowSense::kGreaterEqual, 0.0,
              Name("mono", q)});
    p.AddRow({{{hi, 1.0}, {lo, -1.0}, {x, -1.0}}, RowSense::kLessEqual, 0.0,
              Name("step", q)});
    p.AddRow({{{x, 1.0}, {hi, -1.0}}, RowSense::kLessEqual, 0.0,
              Name("reach", q)});
  }
  AddBudgetRow(p, inst);

  p.set_completion([n, z, sets = e.sets()](std::span<double> v) {
    const std::vector<double> x = BinaryX(v, n);
    for (size_t s = 0; s < sets.size(); ++s) {
      double m = 0.0;
      for (ProductId j : sets[s]) m = std::max(m, x[j - 1]);
      v[z[s]] = m;
    }
  });
  return p;
}

ProgramSize BaseMipSize(const RankingModel& model) {
  const int sum_l = model.total_prefix_length();
  const int extra = model.instance().budget() ? 1 : 0;
  return {model.instance().n_products() + sum_l,
          2 * sum_l + model.size() + extra};
}

ProgramSize XsetMipSize(const ExclusionModel& e) {
  const int extra = e.instance().budget() ? 1 : 0;
  return {e.instance().n_products() + e.num_sets(),
          3 * e.num_pairs() + extra};
}

MathProgram BuildLinkedBaseMip(const RankingModel& model) {
  MathProgram p("linked");
  const Instance& inst = model.instance();
  AddProductVariables(p, inst);
  const std::vector<std::vector<int>> y = AddBaseRows(p, model);
  // Leading set -> (ranking, length) of its first owner.
  std::map<std::vector<ProductId>, std::pair<int, int>> owner;
  for (int k = 0; k < model.size(); ++k) {
    const Ranking& r = model.ranking(k);
    std::vector<ProductId> lead;
    for (int l = 1; l <= r.length(); ++l) {
      lead.insert(std::upper_bound(lead.begin(), lead.end(), r.prefix[l - 1]),
                  r.prefix[l - 1]);
      auto [it, fresh] = owner.emplace(lead, std::make_pair(k, l));
      if (fresh) continue;
      const auto [k0, l0] = it->second;
      Row link{.terms = {}, .sense = RowSense::kEqual, .rhs = 0.0,
               .name = Name("link", k, l)};
      for (int m = 0; m < l; ++m) link.terms.push_back({y[k][m], 1.0});
      for (int m = 0; m < l0; ++m) link.terms.push_back({y[k0][m], -1.0});
      p.AddRow(std::move(link));
    }
  }
  AddBudgetRow(p, inst);
  return p;
}

}  // namespace rankopt
