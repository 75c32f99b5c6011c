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

// Command line front end. Exit codes: 0 success, 2 invalid input, 3 solver
// failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rankopt/cli_eval.h"
#include "rankopt/cutgen.h"
#include "rankopt/error.h"
#include "rankopt/lp_format.h"

namespace rankopt {
namespace {

using json = nlohmann::json;

constexpr int kExitInvalid = 2;
constexpr int kExitSolver = 3;

json OptionalNumber(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json ReportJson(const RankingModel& model, const MethodResult& r) {
  json j = {{"method", ToString(r.method)},
            {"n_products", model.instance().n_products()},
            {"rankings", model.size()},
            {"budget", model.instance().budget()
                           ? json(*model.instance().budget())
                           : json(nullptr)},
            {"products", r.products},
            {"objective", r.objective},
            {"seconds", r.seconds}};
  if (r.benders) {
    const SolveReport& b = *r.benders;
    j["phase1"] = {{"status", b.phase1_status},
                   {"bound", OptionalNumber(b.phase1_bound)},
                   {"rounds", b.phase1_rounds},
                   {"cuts", b.phase1_cuts},
                   {"seconds", b.phase1_seconds}};
    j["phase2"] = {{"rounds", b.phase2_rounds},
                   {"cuts", b.phase2_cuts},
                   {"seconds", b.phase2_seconds}};
    j["initial_cuts"] = b.initial_cuts;
  }
  if (r.size) {
    j["size"] = {{"variables", r.size->variables}, {"rows", r.size->rows}};
  }
  return j;
}

std::string ReportTable(const json& j) {
  std::ostringstream s;
  s << "method     " << j["method"].get<std::string>() << "\n"
    << "objective  " << FormatNumber(j["objective"].get<double>()) << "\n"
    << "products   " << j["products"].dump() << "\n"
    << "time (s)   " << FormatNumber(j["seconds"].get<double>()) << "\n";
  if (j.contains("phase1")) {
    s << "phase 1    " << j["phase1"]["status"].get<std::string>() << ", "
      << j["phase1"]["cuts"] << " cuts in " << j["phase1"]["rounds"]
      << " rounds, " << FormatNumber(j["phase1"]["seconds"].get<double>())
      << " s\n"
      << "phase 2    " << j["phase2"]["cuts"] << " cuts in "
      << j["phase2"]["rounds"] << " rounds, "
      << FormatNumber(j["phase2"]["seconds"].get<double>()) << " s\n";
  }
  if (j.contains("size")) {
    s << "size       " << j["size"]["variables"] << " variables, "
      << j["size"]["rows"] << " rows\n";
  }
  return s.str();
}

void Emit(const json& j, const std::string& out, bool as_json,
          const std::string& table) {
  if (!out.empty()) WriteFile(out, j.dump(2) + "\n");
  std::cout << (as_json ? j.dump(2) + "\n" : table);
}

Phase1Mode ParsePhase1(const std::string& s) {
  if (s == "run") return Phase1Mode::kRun;
  if (s == "auto") return Phase1Mode::kIfSupported;
  if (s == "off") return Phase1Mode::kSkip;
  throw InvalidInput("--phase1 must be run, auto or off");
}

Method MethodOrThrow(const std::string& s) {
  const std::optional<Method> m = ParseMethod(s);
  if (!m) throw InvalidInput("unknown method '" + s + "'");
  return *m;
}

std::vector<double> ParseValues(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  for (std::string item; std::getline(s, item, ',');) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput("bad value '" + item + "' in --x");
    }
  }
  return out;
}

struct SolveFlags {
  std::string method = "benders";
  std::string backend = "builtin";
  double tol = 1e-6;
  bool no_pareto = false;
  std::string phase1 = "run";

  void Add(CLI::App* app) {
    app->add_option("--method", method, "benders, base-mip, xset-mip or enum")
        ->capture_default_str();
    app->add_option("--backend", backend, "builtin or file")
        ->capture_default_str();
    app->add_option("--tol", tol, "cut violation tolerance")
        ->capture_default_str();
    app->add_flag("--no-pareto", no_pareto, "keep unrepaired cuts");
    app->add_option("--phase1", phase1, "run, auto or off")
        ->capture_default_str();
  }
  BendersOptions Options() const {
    return {.epsilon = tol, .pareto = !no_pareto, .phase1 = ParsePhase1(phase1)};
  }
};

int Run(int argc, char** argv) {
  CLI::App app{"Assortment optimization under ranking-based choice models"};
  app.require_subcommand(1);

  // generate
  GeneratorConfig gen;
  std::optional<int> gen_budget;
  std::string gen_out = "instance.json", gen_sidecar;
  bool gen_json = false;
  CLI::App* generate = app.add_subcommand(
      "generate", "sample an instance from a random MNL with rank cutoff");
  generate->add_option("--n", gen.n_products, "products")->capture_default_str();
  generate->add_option("--m", gen.m_rankings, "ground-truth rankings")
      ->capture_default_str();
  generate->add_option("--k-tilde", gen.k_tilde, "utility samples")
      ->capture_default_str();
  generate->add_option("--cutoff", gen.rank_cutoff, "rank cutoff L")
      ->capture_default_str();
  generate->add_option("--transactions", gen.n_transactions,
                       "transactions for the MNL fit")
      ->capture_default_str();
  generate->add_option("--inclusion", gen.inclusion_prob,
                       "probability a product is offered in a transaction")
      ->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--budget", gen_budget, "cardinality budget");
  generate->add_flag("--exact-budget", gen.exact_budget,
                     "offer exactly the budget");
  generate->add_option("--out", gen_out, "instance JSON")->capture_default_str();
  generate->add_option("--sidecar", gen_sidecar,
                       "ground-truth JSON (default: <out>.truth.json)");
  generate->add_flag("--json", gen_json, "print JSON instead of a table");

  // solve
  SolveFlags solve_flags;
  std::string solve_in, solve_out;
  std::optional<int> solve_budget;
  bool solve_json = false;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("instance", solve_in, "instance JSON")->required();
  solve_flags.Add(solve);
  solve->add_option("--budget", solve_budget, "override the budget");
  solve->add_option("--out", solve_out, "report JSON");
  solve->add_flag("--json", solve_json, "print JSON instead of a table");

  // evaluate
  SolveFlags eval_flags;
  std::string eval_in, eval_sidecar, eval_out;
  int eval_rows = 10000, eval_folds = 0;
  uint64_t eval_seed = 1;
  bool eval_json = false;
  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "out-of-sample approximation gap of the SAA assortment");
  evaluate->add_option("instance", eval_in, "instance JSON")->required();
  evaluate->add_option("--sidecar", eval_sidecar,
                       "ground-truth JSON (default: <instance>.truth.json)");
  eval_flags.Add(evaluate);
  evaluate->add_option("--validation-rows", eval_rows)->capture_default_str();
  evaluate->add_option("--folds", eval_folds,
                       "cross-validate over the training rows (0: off)")
      ->capture_default_str();
  evaluate->add_option("--fold-seed", eval_seed)->capture_default_str();
  evaluate->add_option("--out", eval_out, "report JSON");
  evaluate->add_flag("--json", eval_json, "print JSON instead of a table");

  // benchmark
  BenchmarkConfig bench;
  std::optional<int> bench_budget = 3;
  bool bench_no_budget = false;
  std::vector<uint64_t> bench_seeds;
  int bench_reps = 1;
  std::vector<std::string> bench_methods = {"benders", "base-mip", "xset-mip"};
  std::string bench_csv, bench_json_out, bench_backend = "builtin";
  bool bench_json = false;
  CLI::App* benchmark =
      app.add_subcommand("benchmark", "time the methods on sampled instances");
  benchmark->add_option("--n", bench.n_products)->capture_default_str();
  benchmark->add_option("--m", bench.m_rankings)->capture_default_str();
  benchmark->add_option("--k-tilde", bench.k_tilde)->capture_default_str();
  benchmark->add_option("--cutoff", bench.rank_cutoff)->capture_default_str();
  benchmark->add_option("--transactions", bench.n_transactions)
      ->capture_default_str();
  benchmark->add_option("--budget", bench_budget)->capture_default_str();
  benchmark->add_flag("--no-budget", bench_no_budget, "drop the budget");
  benchmark->add_option("--seeds", bench_seeds, "one replication per seed")
      ->delimiter(',');
  benchmark->add_option("--replications", bench_reps,
                        "seeds 1..R when --seeds is absent")
      ->capture_default_str();
  benchmark->add_option("--methods", bench_methods)->delimiter(',');
  benchmark->add_option("--backend", bench_backend)->capture_default_str();
  benchmark->add_option("--csv", bench_csv, "CSV output");
  benchmark->add_option("--json-out", bench_json_out, "JSON output");
  benchmark->add_flag("--json", bench_json, "print JSON instead of a table");

  // cuts-debug
  std::string cuts_in, cuts_x;
  int cuts_ranking = 0, cuts_phase = 1;
  bool cuts_no_pareto = false;
  CLI::App* cuts = app.add_subcommand(
      "cuts-debug", "show the cut of one ranking at a given x");
  cuts->add_option("instance", cuts_in, "instance JSON")->required();
  cuts->add_option("--ranking", cuts_ranking, "0-based ranking index")
      ->capture_default_str();
  cuts->add_option("--x", cuts_x, "comma-separated x_1..x_N")->required();
  cuts->add_option("--phase", cuts_phase, "1 (fractional) or 2 (binary)")
      ->capture_default_str();
  cuts->add_flag("--no-pareto", cuts_no_pareto, "skip the repair step");

  // lp-solve
  std::string lp_in, lp_sol, lp_dialect = "hash";
  CLI::App* lp_solve = app.add_subcommand(
      "lp-solve", "solve an LP-format model with the built-in backend");
  lp_solve->add_option("model", lp_in, "LP file")->required();
  lp_solve->add_option("solution", lp_sol, "solution file")->required();
  lp_solve->add_option("--dialect", lp_dialect, "hash or cbc")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  if (generate->parsed()) {
    gen.budget = gen_budget;
    if (gen_sidecar.empty()) gen_sidecar = gen_out + ".truth.json";
    const GeneratedInstance g = GenerateInstance(gen);
    SampleDiagnostics diag;
    const RankingModel model =
        RankingsFromSamples(g.instance, g.training, &diag);
    SaveModel(gen_out, model);
    WriteFile(gen_sidecar,
              SidecarToJson({gen, g.truth, g.mnl, g.fit.warnings}));
    const json j = {{"instance", gen_out},
                    {"sidecar", gen_sidecar},
                    {"rankings", model.size()},
                    {"total_prefix_length", model.total_prefix_length()},
                    {"dropped_mass", model.dropped_mass()},
                    {"rows_accepted", diag.rows_accepted},
                    {"rows_rejected", diag.rejected.size()},
                    {"warnings", g.fit.warnings}};
    for (const std::string& w : g.fit.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    std::ostringstream t;
    t << "wrote " << gen_out << " (" << model.size() << " rankings, "
      << "total prefix length " << model.total_prefix_length()
      << ") and " << gen_sidecar << "\n";
    Emit(j, "", gen_json, t.str());
    return 0;
  }

  if (solve->parsed()) {
    RankingModel model = LoadModel(solve_in);
    if (solve_budget) {
      model = model.WithInstance(model.instance().WithBudget(solve_budget));
    }
    const auto backend = MakeBackend(solve_flags.backend);
    const MethodResult r =
        SolveWithMethod(model, MethodOrThrow(solve_flags.method), *backend,
                        solve_flags.Options(), solve_flags.tol);
    const json j = ReportJson(model, r);
    Emit(j, solve_out, solve_json, ReportTable(j));
    return 0;
  }

  if (evaluate->parsed()) {
    const RankingModel model = LoadModel(eval_in);
    if (eval_sidecar.empty()) eval_sidecar = eval_in + ".truth.json";
    const Sidecar sidecar = SidecarFromJson(ReadFile(eval_sidecar));
    const auto backend = MakeBackend(eval_flags.backend);
    const Method method = MethodOrThrow(eval_flags.method);
    const MethodResult r = SolveWithMethod(model, method, *backend,
                                           eval_flags.Options(), eval_flags.tol);
    const Instance& inst = model.instance();
    const GapReport gap = ApproximationGap(
        Assortment::FromProducts(inst.n_products(), r.products),
        ValidationUtilities(sidecar, eval_rows), inst, r.objective);
    json j = {{"method", ToString(method)},
              {"products", r.products},
              {"training_objective", gap.training_objective},
              {"validation_estimate", gap.validation_estimate},
              {"gap_percent", gap.gap_percent},
              {"validation_rows", gap.validation_rows}};
    std::ostringstream t;
    t << "training objective   " << FormatNumber(gap.training_objective) << "\n"
      << "validation estimate  " << FormatNumber(gap.validation_estimate)
      << " over " << gap.validation_rows << " rows\n"
      << "gap                  " << FormatNumber(gap.gap_percent) << " %\n";
    if (eval_folds > 0) {
      const CrossValidationReport cv =
          CrossValidate(inst, TrainingUtilities(sidecar), eval_folds,
                        eval_seed, method, *backend, eval_flags.Options());
      json folds = json::array();
      for (const FoldResult& f : cv.folds) {
        folds.push_back({{"products", f.products},
                         {"training_objective", f.gap.training_objective},
                         {"validation_estimate", f.gap.validation_estimate},
                         {"gap_percent", f.gap.gap_percent},
                         {"validation_rows", f.gap.validation_rows}});
      }
      j["cross_validation"] = {{"folds", folds},
                               {"mean_gap_percent", cv.mean_gap_percent},
                               {"mean_validation", cv.mean_validation}};
      t << "cross-validation     " << eval_folds << " folds, mean gap "
        << FormatNumber(cv.mean_gap_percent) << " %\n";
    }
    Emit(j, eval_out, eval_json, t.str());
    return 0;
  }

  if (benchmark->parsed()) {
    bench.budget = bench_no_budget ? std::nullopt : bench_budget;
    if (bench_seeds.empty()) {
      if (bench_reps < 1) throw InvalidInput("--replications must be >= 1");
      for (int r = 1; r <= bench_reps; ++r) bench_seeds.push_back(r);
    }
    bench.seeds = bench_seeds;
    bench.methods.clear();
    for (const std::string& m : bench_methods) {
      bench.methods.push_back(MethodOrThrow(m));
    }
    const auto backend = MakeBackend(bench_backend);
    const std::vector<BenchmarkRow> rows = RunBenchmark(bench, *backend);
    if (!bench_csv.empty()) WriteFile(bench_csv, BenchmarkCsv(rows));
    if (!bench_json_out.empty()) WriteFile(bench_json_out, BenchmarkJson(rows));
    std::cout << (bench_json ? BenchmarkJson(rows) : BenchmarkTable(rows));
    return 0;
  }

  if (cuts->parsed()) {
    const RankingModel model = LoadModel(cuts_in);
    if (cuts_ranking < 0 || cuts_ranking >= model.size()) {
      throw InvalidInput("--ranking out of range");
    }
    if (cuts_phase != 1 && cuts_phase != 2) {
      throw InvalidInput("--phase must be 1 or 2");
    }
    const int n = model.instance().n_products();
    std::vector<double> values = ParseValues(cuts_x);
    if (static_cast<int>(values.size()) != n) {
      throw InvalidInput("--x needs " + std::to_string(n) + " values");
    }
    for (double v : values) {
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("--x values lie in [0, 1]");
    }
    const Assortment x = Assortment::FromValues(n, values);
    const ChainPtr chain = std::make_shared<RankingChain>(
        model.instance(), model.ranking(cuts_ranking), cuts_ranking);
    const DualDelta d =
        cuts_phase == 1 ? Phase1Cut(x, chain) : Phase2Cut(x, chain);
    const DualDelta t = cuts_no_pareto ? d : ParetoTransform(d);
    const Cut cut = CutCoefficients(t);
    const ParetoCheck check = IsParetoCandidate(d);
    json coeffs = json::object();
    for (const auto& [i, c] : cut.coeffs) coeffs[std::to_string(i)] = c;
    const json j = {{"ranking", cuts_ranking},
                    {"prefix", model.ranking(cuts_ranking).prefix},
                    {"phase", cuts_phase},
                    {"delta", d.values()},
                    {"violated_properties", check.violated},
                    {"transformed", t.values()},
                    {"j_value", JValue(x, t)},
                    {"intercept", cut.intercept},
                    {"coefficients", coeffs}};
    std::cout << j.dump(2) << "\n";
    std::cout << "J = " << FormatNumber(cut.intercept);
    for (const auto& [i, c] : cut.coeffs) {
      if (c == 0.0) continue;
      std::cout << (c < 0 ? " - " : " + ") << FormatNumber(std::abs(c)) << " x"
                << i;
    }
    std::cout << "\n";
    return 0;
  }

  if (lp_solve->parsed()) {
    if (lp_dialect != "hash" && lp_dialect != "cbc") {
      throw InvalidInput("--dialect must be hash or cbc");
    }
    const MathProgram p = ParseLpFormat(ReadFile(lp_in));
    const BackendSolution sol = BuiltinBackend().Load(p)->Solve();
    if (lp_dialect == "hash") {
      WriteFile(lp_sol, FormatSolution(p, sol.status, sol.x));
      return 0;
    }
    std::string text;
    switch (sol.status) {
      case SolveStatus::kOptimal:
        text = "Optimal - objective value " + FormatNumber(sol.objective) + "\n";
        for (int j = 0; j < p.num_variables(); ++j) {
          text += std::to_string(j) + " " + p.variable(j).name + " " +
                  FormatNumber(sol.x[j]) + " 0\n";
        }
        break;
      case SolveStatus::kInfeasible:
        text = "Infeasible - objective value 0\n";
        break;
      case SolveStatus::kUnbounded:
        text = "Unbounded - objective value 0\n";
        break;
    }
    WriteFile(lp_sol, text);
    return 0;
  }
  return 0;
}

}  // namespace
}  // namespace rankopt

int main(int argc, char** argv) {
  try {
    return rankopt::Run(argc, argv);
  } catch (const rankopt::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rankopt::kExitInvalid;
  } catch (const rankopt::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return rankopt::kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rankopt::kExitSolver;
  }
}
