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

#include "rankopt/cli_eval.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "rankopt/error.h"
#include "rankopt/lp_format.h"
#include "rankopt/oracle.h"
#include "rankopt/rng.h"

namespace rankopt {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr uint64_t kValidationSalt = 0x76616c6964617465ULL;
constexpr uint64_t kFoldStream = uint64_t{1} << 50;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

const json& Field(const json& j, const char* name) {
  if (!j.is_object()) throw InvalidInput("expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw InvalidInput(std::string("missing field ") + name);
  return *it;
}

int IntField(const json& j, const char* name) {
  const json& v = Field(j, name);
  if (!v.is_number_integer()) {
    throw InvalidInput(std::string(name) + " must be an integer");
  }
  return v.get<int>();
}

double NumberAt(const json& v, const char* what) {
  if (!v.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<double> Numbers(const json& v, const char* what) {
  if (!v.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<double> out;
  for (const json& e : v) out.push_back(NumberAt(e, what));
  return out;
}

std::vector<ProductId> Ids(const json& v, const char* what) {
  if (!v.is_array()) throw InvalidInput(std::string(what) + " must be an array");
  std::vector<ProductId> out;
  for (const json& e : v) {
    if (!e.is_number_integer()) {
      throw InvalidInput(std::string(what) + " must hold integers");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

std::optional<int> OptionalInt(const json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) {
    throw InvalidInput(std::string(name) + " must be an integer or null");
  }
  return it->get<int>();
}

json BudgetJson(std::optional<int> b) { return b ? json(*b) : json(nullptr); }

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string ModelToJson(const RankingModel& model) {
  const Instance& inst = model.instance();
  json j;
  j["n_products"] = inst.n_products();
  j["revenues"] = std::vector<double>(inst.revenues().begin(),
                                      inst.revenues().end() - 1);
  j["budget"] = BudgetJson(inst.budget());
  if (inst.exact_budget()) j["exact_budget"] = true;
  json rankings = json::array();
  for (const Ranking& r : model.rankings()) {
    rankings.push_back({{"prefix", r.prefix}, {"lambda", r.probability}});
  }
  j["rankings"] = std::move(rankings);
  if (model.dropped_mass() != 0.0) j["dropped_mass"] = model.dropped_mass();
  return j.dump(2) + "\n";
}

RankingModel ModelFromJson(std::string_view text) {
  const json j = ParseJson(text);
  const int n = IntField(j, "n_products");
  std::vector<double> revenues = Numbers(Field(j, "revenues"), "revenues");
  const std::optional<int> budget = OptionalInt(j, "budget");
  bool exact = false;
  if (const auto it = j.find("exact_budget"); it != j.end()) {
    if (!it->is_boolean()) throw InvalidInput("exact_budget must be a bool");
    exact = it->get<bool>();
  }
  const json& rankings_json = Field(j, "rankings");
  if (!rankings_json.is_array()) throw InvalidInput("rankings must be an array");
  std::vector<Ranking> rankings;
  for (const json& r : rankings_json) {
    rankings.push_back({Ids(Field(r, "prefix"), "prefix"),
                        NumberAt(Field(r, "lambda"), "lambda")});
  }
  double dropped = 0.0;
  if (const auto it = j.find("dropped_mass"); it != j.end()) {
    dropped = NumberAt(*it, "dropped_mass");
  }
  return RankingModel(Instance(n, std::move(revenues), budget, exact),
                      std::move(rankings), dropped);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("cannot write " + path);
}

RankingModel LoadModel(const std::string& path) {
  return ModelFromJson(ReadFile(path));
}

void SaveModel(const std::string& path, const RankingModel& model) {
  WriteFile(path, ModelToJson(model));
}

std::string SidecarToJson(const Sidecar& s) {
  const GeneratorConfig& c = s.config;
  json j;
  j["rng"] = kRngName;
  j["config"] = {{"n_products", c.n_products},
                 {"m_rankings", c.m_rankings},
                 {"k_tilde", c.k_tilde},
                 {"rank_cutoff", c.rank_cutoff},
                 {"n_transactions", c.n_transactions},
                 {"inclusion_prob", c.inclusion_prob},
                 {"seed", c.seed},
                 {"budget", BudgetJson(c.budget)},
                 {"exact_budget", c.exact_budget},
                 {"mnl_floor", c.fit.floor},
                 {"mnl_ceiling", c.fit.ceiling}};
  j["ground_truth"] = {{"rankings", s.truth.rankings},
                       {"weights", s.truth.weights}};
  j["mnl"] = {{"attraction", s.mnl.attraction},
              {"rank_cutoff", s.mnl.rank_cutoff},
              {"revenues", s.mnl.revenues}};
  j["warnings"] = s.warnings;
  return j.dump(2) + "\n";
}

Sidecar SidecarFromJson(std::string_view text) {
  const json j = ParseJson(text);
  Sidecar s;
  try {
    if (j.value("rng", std::string()) != kRngName) {
      throw InvalidInput("sidecar was written with another generator");
    }
    const json& c = Field(j, "config");
    s.config.n_products = IntField(c, "n_products");
    s.config.m_rankings = IntField(c, "m_rankings");
    s.config.k_tilde = IntField(c, "k_tilde");
    s.config.rank_cutoff = IntField(c, "rank_cutoff");
    s.config.n_transactions = IntField(c, "n_transactions");
    s.config.inclusion_prob = NumberAt(Field(c, "inclusion_prob"), "inclusion_prob");
    s.config.seed = Field(c, "seed").get<uint64_t>();
    s.config.budget = OptionalInt(c, "budget");
    s.config.exact_budget = Field(c, "exact_budget").get<bool>();
    s.config.fit.floor = NumberAt(Field(c, "mnl_floor"), "mnl_floor");
    s.config.fit.ceiling = NumberAt(Field(c, "mnl_ceiling"), "mnl_ceiling");
    const json& g = Field(j, "ground_truth");
    s.truth.n_products = s.config.n_products;
    for (const json& r : Field(g, "rankings")) {
      s.truth.rankings.push_back(Ids(r, "ground truth ranking"));
    }
    s.truth.weights = Numbers(Field(g, "weights"), "weights");
    const json& m = Field(j, "mnl");
    s.mnl.attraction = Numbers(Field(m, "attraction"), "attraction");
    s.mnl.rank_cutoff = IntField(m, "rank_cutoff");
    s.mnl.revenues = Numbers(Field(m, "revenues"), "revenues");
    for (const json& w : j.value("warnings", json::array())) {
      s.warnings.push_back(w.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed sidecar: ") + e.what());
  }
  s.mnl.Validate();
  return s;
}

UtilityMatrix TrainingUtilities(const Sidecar& s) {
  return SampleUtilities(s.mnl, s.config.k_tilde, s.config.seed);
}

UtilityMatrix ValidationUtilities(const Sidecar& s, int rows) {
  return SampleUtilities(s.mnl, rows, Mix64(s.config.seed ^ kValidationSalt));
}

const char* ToString(Method method) {
  switch (method) {
    case Method::kBenders:
      return "benders";
    case Method::kBaseMip:
      return "base-mip";
    case Method::kXsetMip:
      return "xset-mip";
    case Method::kEnumerate:
      return "enum";
  }
  return "unknown";
}

std::optional<Method> ParseMethod(std::string_view name) {
  for (Method m : {Method::kBenders, Method::kBaseMip, Method::kXsetMip,
                   Method::kEnumerate}) {
    if (name == ToString(m)) return m;
  }
  return std::nullopt;
}

MethodResult SolveWithMethod(const RankingModel& model, Method method,
                             const SolverBackend& backend,
                             const BendersOptions& options, double tolerance) {
  const auto start = Clock::now();
  const int n = model.instance().n_products();
  MethodResult out;
  out.method = method;
  switch (method) {
    case Method::kBenders: {
      BendersOptions o = options;
      o.epsilon = tolerance;
      out.benders = SolveTwoPhase(model, backend, o);
      out.products = out.benders->products;
      out.objective = out.benders->objective;
      break;
    }
    case Method::kEnumerate: {
      const EnumerationResult r = EnumerateOptimal(model);
      out.products = r.x.Products();
      out.objective = r.objective;
      break;
    }
    case Method::kBaseMip:
    case Method::kXsetMip: {
      MathProgram p;
      if (method == Method::kBaseMip) {
        p = BuildBaseMip(model);
        out.size = BaseMipSize(model);
      } else {
        const ExclusionModel e = BuildExclusionSets(model);
        p = BuildXsetMip(e);
        out.size = XsetMipSize(e);
      }
      const BackendSolution sol = backend.Load(std::move(p))->Solve();
      if (sol.status != SolveStatus::kOptimal) {
        throw SolverFailure(std::string(ToString(method)) + ": " +
                            ToString(sol.status));
      }
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = sol.x[i] >= 0.5 ? 1.0 : 0.0;
      const Assortment a = Assortment::FromValues(n, std::move(x));
      out.products = a.Products();
      out.objective = ExpectedRevenue(model, a);
      if (std::abs(sol.objective - out.objective) >
          tolerance * (1.0 + std::abs(out.objective))) {
        throw SolverFailure(std::string(ToString(method)) + ": solver value " +
                            FormatNumber(sol.objective) +
                            " disagrees with the revenue " +
                            FormatNumber(out.objective));
      }
      break;
    }
  }
  out.seconds = SecondsSince(start);
  return out;
}

double RowRevenue(const Instance& instance, std::span<const double> row,
                  const Assortment& x) {
  const int n = instance.n_products();
  ProductId best = n + 1;
  double top = row[n];
  for (ProductId i = 1; i <= n; ++i) {
    if (x[i] >= 0.5 && row[i - 1] > top) {
      top = row[i - 1];
      best = i;
    }
  }
  return instance.revenue(best);
}

GapReport ApproximationGap(const Assortment& x,
                           const UtilityMatrix& validation,
                           const Instance& instance,
                           double training_objective) {
  if (validation.rows() == 0) throw InvalidInput("empty validation set");
  if (validation.cols() != instance.n_products() + 1) {
    throw InvalidInput("validation rows need N+1 utilities");
  }
  if (x.n_products() != instance.n_products()) {
    throw InvalidInput("assortment and instance disagree on N");
  }
  if (!(training_objective >= 0.0)) {
    throw InvalidInput("training objective must be nonnegative");
  }
  double total = 0.0;
  for (int r = 0; r < validation.rows(); ++r) {
    total += RowRevenue(instance, validation.row(r), x);
  }
  GapReport g;
  g.training_objective = training_objective;
  g.validation_rows = validation.rows();
  g.validation_estimate = total / validation.rows();
  if (training_objective == 0.0) {
    g.gap_percent = g.validation_estimate == 0.0 ? 100.0 : INFINITY;
  } else {
    g.gap_percent = g.validation_estimate / training_objective * 100.0;
  }
  return g;
}

CrossValidationReport CrossValidate(const Instance& instance,
                                    const UtilityMatrix& samples, int folds,
                                    uint64_t seed, Method method,
                                    const SolverBackend& backend,
                                    const BendersOptions& options) {
  const int rows = samples.rows();
  if (folds < 2 || folds > rows) {
    throw InvalidInput("folds must lie in [2, rows]");
  }
  std::vector<int> order(rows);
  std::iota(order.begin(), order.end(), 0);
  CounterRng rng(seed, kFoldStream);
  for (int i = rows - 1; i > 0; --i) std::swap(order[i], order[rng.Below(i + 1)]);

  CrossValidationReport report;
  for (int f = 0; f < folds; ++f) {
    const int lo = static_cast<int>(static_cast<long long>(rows) * f / folds);
    const int hi =
        static_cast<int>(static_cast<long long>(rows) * (f + 1) / folds);
    std::vector<int> train, held;
    for (int p = 0; p < rows; ++p) {
      (p >= lo && p < hi ? held : train).push_back(order[p]);
    }
    const RankingModel model =
        RankingsFromSamples(instance, samples.Select(train));
    const MethodResult r = SolveWithMethod(model, method, backend, options);
    const Assortment x =
        Assortment::FromProducts(instance.n_products(), r.products);
    report.folds.push_back(
        {r.products, ApproximationGap(x, samples.Select(held), instance,
                                      r.objective)});
    report.mean_gap_percent += report.folds.back().gap.gap_percent / folds;
    report.mean_validation +=
        report.folds.back().gap.validation_estimate / folds;
  }
  return report;
}

std::vector<BenchmarkRow> RunBenchmark(const BenchmarkConfig& config,
                                       const SolverBackend& backend) {
  if (config.seeds.empty()) throw InvalidInput("benchmark needs seeds");
  std::vector<BenchmarkRow> rows;
  for (Method m : config.methods) {
    BenchmarkRow row;
    row.method = ToString(m);
    row.n_products = config.n_products;
    row.m_rankings = config.m_rankings;
    row.k_tilde = config.k_tilde;
    row.rank_cutoff = config.rank_cutoff;
    row.budget = config.budget;
    rows.push_back(row);
  }
  const double reps = static_cast<double>(config.seeds.size());
  for (uint64_t seed : config.seeds) {
    GeneratorConfig g;
    g.n_products = config.n_products;
    g.m_rankings = config.m_rankings;
    g.k_tilde = config.k_tilde;
    g.rank_cutoff = config.rank_cutoff;
    g.n_transactions = config.n_transactions;
    g.inclusion_prob = config.inclusion_prob;
    g.seed = seed;
    g.budget = config.budget;
    const GeneratedInstance gen = GenerateInstance(g);
    const RankingModel model = RankingsFromSamples(gen.instance, gen.training);
    const ProgramSize base = BaseMipSize(model);
    const ProgramSize xset = XsetMipSize(BuildExclusionSets(model));
    for (size_t i = 0; i < config.methods.size(); ++i) {
      BenchmarkRow& row = rows[i];
      ++row.replications;
      row.rankings += model.size() / reps;
      row.base_variables += base.variables / reps;
      row.base_rows += base.rows / reps;
      row.xset_variables += xset.variables / reps;
      row.xset_rows += xset.rows / reps;
      row.variable_ratio +=
          static_cast<double>(base.variables) / xset.variables / reps;
      row.row_ratio += static_cast<double>(base.rows) / xset.rows / reps;
      try {
        const MethodResult r =
            SolveWithMethod(model, config.methods[i], backend, config.benders);
        row.seconds += r.seconds / reps;
        row.objective += r.objective / reps;
        if (r.benders) {
          row.phase1_status = r.benders->phase1_status;
          row.phase1_seconds += r.benders->phase1_seconds / reps;
          row.phase2_seconds += r.benders->phase2_seconds / reps;
          row.phase1_cuts += r.benders->phase1_cuts / reps;
          row.phase2_cuts += r.benders->phase2_cuts / reps;
        }
      } catch (const std::runtime_error& e) {
        if (row.status == "ok") row.status = e.what();
      }
    }
  }
  for (BenchmarkRow& row : rows) {
    if (row.status != "ok") {
      row.seconds = NAN;
      row.objective = NAN;
    }
  }
  return rows;
}

std::string BenchmarkCsv(const std::vector<BenchmarkRow>& rows) {
  std::string out =
      "method,N,M,K_tilde,L,budget,replications,rankings,status,seconds,"
      "objective,phase1_status,phase1_seconds,phase2_seconds,phase1_cuts,"
      "phase2_cuts,base_variables,base_rows,xset_variables,xset_rows,"
      "variable_ratio,row_ratio\n";
  for (const BenchmarkRow& r : rows) {
    const std::vector<std::string> fields = {
        r.method,
        std::to_string(r.n_products),
        std::to_string(r.m_rankings),
        std::to_string(r.k_tilde),
        std::to_string(r.rank_cutoff),
        r.budget ? std::to_string(*r.budget) : "",
        std::to_string(r.replications),
        FormatNumber(r.rankings),
        r.status,
        FormatNumber(r.seconds),
        FormatNumber(r.objective),
        r.phase1_status,
        FormatNumber(r.phase1_seconds),
        FormatNumber(r.phase2_seconds),
        FormatNumber(r.phase1_cuts),
        FormatNumber(r.phase2_cuts),
        FormatNumber(r.base_variables),
        FormatNumber(r.base_rows),
        FormatNumber(r.xset_variables),
        FormatNumber(r.xset_rows),
        FormatNumber(r.variable_ratio),
        FormatNumber(r.row_ratio)};
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i) out += ',';
      out += CsvField(fields[i]);
    }
    out += '\n';
  }
  return out;
}

std::string BenchmarkJson(const std::vector<BenchmarkRow>& rows) {
  auto number = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  json out = json::array();
  for (const BenchmarkRow& r : rows) {
    out.push_back({{"method", r.method},
                   {"N", r.n_products},
                   {"M", r.m_rankings},
                   {"K_tilde", r.k_tilde},
                   {"L", r.rank_cutoff},
                   {"budget", BudgetJson(r.budget)},
                   {"replications", r.replications},
                   {"rankings", r.rankings},
                   {"status", r.status},
                   {"seconds", number(r.seconds)},
                   {"objective", number(r.objective)},
                   {"phase1_status", r.phase1_status},
                   {"phase1_seconds", r.phase1_seconds},
                   {"phase2_seconds", r.phase2_seconds},
                   {"phase1_cuts", r.phase1_cuts},
                   {"phase2_cuts", r.phase2_cuts},
                   {"base_variables", r.base_variables},
                   {"base_rows", r.base_rows},
                   {"xset_variables", r.xset_variables},
                   {"xset_rows", r.xset_rows},
                   {"variable_ratio", r.variable_ratio},
                   {"row_ratio", r.row_ratio}});
  }
  return out.dump(2) + "\n";
}

std::string BenchmarkTable(const std::vector<BenchmarkRow>& rows) {
  std::ostringstream s;
  s << std::left << std::setw(10) << "method" << std::right << std::setw(5)
    << "N" << std::setw(4) << "M" << std::setw(7) << "K~" << std::setw(4)
    << "L" << std::setw(7) << "budget" << std::setw(8) << "K" << std::setw(11)
    << "time_s" << std::setw(13) << "objective" << std::setw(9) << "cuts_p1"
    << std::setw(9) << "cuts_p2" << std::setw(10) << "var_ratio"
    << std::setw(10) << "row_ratio" << "  status\n";
  for (const BenchmarkRow& r : rows) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%-10s%5d%4d%7d%4d%7s%8.1f%11.3f%13.4f%9.1f%9.1f%10.3f%10.3f"
                  "  %s\n",
                  r.method.c_str(), r.n_products, r.m_rankings, r.k_tilde,
                  r.rank_cutoff,
                  r.budget ? std::to_string(*r.budget).c_str() : "-",
                  r.rankings, r.seconds, r.objective, r.phase1_cuts,
                  r.phase2_cuts, r.variable_ratio, r.row_ratio,
                  r.status.c_str());
    s << buf;
  }
  return s.str();
}

}  // namespace rankopt
