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

#include "rankopt/solver_backend.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "rankopt/error.h"
#include "rankopt/lp_format.h"
#include "rankopt/oracle.h"

namespace rankopt {

const char* ToString(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

void BackendModel::AddRows(std::vector<Row> rows) {
  for (Row& r : rows) program_.AddRow(std::move(r));
}

std::unique_ptr<BackendModel> SolverBackend::Load(const MathProgram& p) const {
  if (p.has_integers() && !capabilities().supports_mip) {
    throw InvalidInput("backend " + capabilities().name +
                       " cannot solve programs with integer variables");
  }
  return DoLoad(p);
}

namespace {

constexpr double kFeasTol = 1e-9;

double RowActivity(const Row& row, std::span<const double> v) {
  double a = 0.0;
  for (const LinearTerm& t : row.terms) a += t.coef * v[t.var];
  return a;
}

bool RowHolds(RowSense sense, double activity, double rhs) {
  const double tol = kFeasTol * std::max(1.0, std::abs(rhs));
  switch (sense) {
    case RowSense::kLessEqual:
      return activity <= rhs + tol;
    case RowSense::kGreaterEqual:
      return activity >= rhs - tol;
    case RowSense::kEqual:
      return std::abs(activity - rhs) <= tol;
  }
  return false;
}

// Dense simplex on the whole program.
BackendSolution SolveDenseLp(const MathProgram& p, long long max_cells) {
  const long long m = p.num_rows();
  const long long cells = m * (p.num_variables() + 2 * m + 1);
  if (cells > max_cells) {
    throw CapacityExceeded("LP with " + std::to_string(p.num_variables()) +
                           " variables and " + std::to_string(m) +
                           " rows exceeds the built-in dense simplex limit");
  }
  const LpSolution s = SimplexSolve(ToDenseLp(p));
  BackendSolution out;
  out.work = s.iterations;
  switch (s.status) {
    case LpStatus::kOptimal:
      out.status = SolveStatus::kOptimal;
      out.x = s.x;
      out.objective = s.value;
      break;
    case LpStatus::kInfeasible:
      out.status = SolveStatus::kInfeasible;
      break;
    case LpStatus::kUnbounded:
      out.status = SolveStatus::kUnbounded;
      break;
  }
  return out;
}

enum class FillStatus { kFeasible, kInfeasible, kUnbounded };

// A block of continuous variables linked by rows.
struct Component {
  std::vector<int> vars;
  std::vector<int> rows;
};

class BuiltinModel : public BackendModel {
 public:
  BuiltinModel(MathProgram p, BuiltinOptions options)
      : BackendModel(std::move(p)), options_(options) {}

  BackendSolution Solve(const LazyRowSource& lazy) override {
    if (!program_.has_integers()) {
      return SolveDenseLp(program_, options_.max_lp_cells);
    }
    return SolveMip(lazy);
  }

 private:
  void Analyze() {
    const auto& vars = program_.variables();
    const int n = program_.num_variables();
    ints_.clear();
    conts_.clear();
    for (int j = 0; j < n; ++j) {
      (vars[j].integer ? ints_ : conts_).push_back(j);
    }
    // Union-find over continuous variables.
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    int_rows_.clear();
    std::vector<int> mixed;
    for (int r = 0; r < program_.num_rows(); ++r) {
      int first = -1;
      for (const LinearTerm& t : program_.rows()[r].terms) {
        if (vars[t.var].integer) continue;
        if (first < 0) {
          first = t.var;
        } else {
          parent[find(t.var)] = find(first);
        }
      }
      if (first < 0) {
        int_rows_.push_back(r);
      } else {
        mixed.push_back(r);
      }
    }
    std::map<int, int> root_to_comp;
    components_.clear();
    for (int j : conts_) {
      auto [it, fresh] = root_to_comp.emplace(find(j), components_.size());
      if (fresh) components_.emplace_back();
      components_[it->second].vars.push_back(j);
    }
    for (int r : mixed) {
      for (const LinearTerm& t : program_.rows()[r].terms) {
        if (!vars[t.var].integer) {
          components_[root_to_comp.at(find(t.var))].rows.push_back(r);
          break;
        }
      }
    }
    analyzed_rows_ = program_.num_rows();
  }

  // Best fill of one single-variable component in closed form.
  FillStatus FillSingle(const Component& c, std::span<double> v) const {
    const int j = c.vars[0];
    const Variable& var = program_.variable(j);
    double lo = var.lower, hi = var.upper;
    for (int r : c.rows) {
      const Row& row = program_.rows()[r];
      double a = 0.0, rest = 0.0;
      for (const LinearTerm& t : row.terms) {
        if (t.var == j) {
          a += t.coef;
        } else {
          rest += t.coef * v[t.var];
        }
      }
      const double b = row.rhs - rest;
      if (a == 0.0) {
        if (!RowHolds(row.sense, 0.0, b)) return FillStatus::kInfeasible;
        continue;
      }
      const double bound = b / a;
      const bool upper = (row.sense == RowSense::kLessEqual) == (a > 0);
      if (row.sense == RowSense::kEqual) {
        lo = std::max(lo, bound);
        hi = std::min(hi, bound);
      } else if (upper) {
        hi = std::min(hi, bound);
      } else {
        lo = std::max(lo, bound);
      }
    }
    if (lo > hi + kFeasTol * std::max(1.0, std::abs(hi))) {
      return FillStatus::kInfeasible;
    }
    if (lo > hi) lo = hi;
    double val;
    if (var.objective > 0.0) {
      if (std::isinf(hi)) return FillStatus::kUnbounded;
      val = hi;
    } else if (var.objective < 0.0) {
      if (std::isinf(lo)) return FillStatus::kUnbounded;
      val = lo;
    } else {
      val = std::isfinite(lo) ? lo : std::isfinite(hi) ? hi : 0.0;
    }
    v[j] = val;
    return FillStatus::kFeasible;
  }

  FillStatus FillLp(const Component& c, std::span<double> v) const {
    DenseLp lp;
    std::map<int, int> local;
    for (int j : c.vars) {
      const Variable& var = program_.variable(j);
      local[j] = lp.AddVariable(var.lower, var.upper, var.objective);
    }
    for (int r : c.rows) {
      const Row& row = program_.rows()[r];
      std::vector<double> coefs(lp.num_vars(), 0.0);
      double rest = 0.0;
      for (const LinearTerm& t : row.terms) {
        auto it = local.find(t.var);
        if (it == local.end()) {
          rest += t.coef * v[t.var];
        } else {
          coefs[it->second] += t.coef;
        }
      }
      lp.AddRow(std::move(coefs), row.sense, row.rhs - rest);
    }
    const LpSolution s = SimplexSolve(lp);
    if (s.status == LpStatus::kInfeasible) return FillStatus::kInfeasible;
    if (s.status == LpStatus::kUnbounded) return FillStatus::kUnbounded;
    for (const auto& [j, l] : local) v[j] = s.x[l];
    return FillStatus::kFeasible;
  }

  FillStatus FillGeneric(std::span<double> v) const {
    for (const Component& c : components_) {
      const FillStatus s =
          c.vars.size() == 1 ? FillSingle(c, v) : FillLp(c, v);
      if (s != FillStatus::kFeasible) return s;
    }
    return FillStatus::kFeasible;
  }

  bool LateRowsHold(std::span<const double> v) const {
    for (int r : late_int_rows_) {
      const Row& row = program_.rows()[r];
      if (!RowHolds(row.sense, RowActivity(row, v), row.rhs)) return false;
    }
    return true;
  }

  // Fills the continuous variables of `v`. With `floor`, returns early with
  // a value <= floor when the hook shows the candidate cannot beat it.
  FillStatus Fill(std::span<double> v, const double* floor, double* value) {
    if (!LateRowsHold(v)) return FillStatus::kInfeasible;
    if (program_.completion()) {
      program_.completion()(v);
      *value = program_.ObjectiveValue(v);
      if (floor != nullptr && *value <= *floor) return FillStatus::kFeasible;
      if (program_.MaxViolation(v) <= kFeasTol) return FillStatus::kFeasible;
    }
    const FillStatus s = FillGeneric(v);
    if (s == FillStatus::kFeasible) *value = program_.ObjectiveValue(v);
    return s;
  }

  double Tolerance(double best) const {
    return kFeasTol * std::max(1.0, std::abs(best));
  }

  void OnLeaf(const LazyRowSource& lazy) {
    if (++result_.work > options_.max_assignments) {
      throw CapacityExceeded(
          "built-in MIP search exceeded " +
          std::to_string(options_.max_assignments) + " integer assignments");
    }
    double value = 0.0;
    const double floor = has_incumbent_ ? best_ + Tolerance(best_) : -kInf;
    FillStatus s = Fill(current_, has_incumbent_ ? &floor : nullptr, &value);
    if (s == FillStatus::kUnbounded) {
      unbounded_ = true;
      return;
    }
    if (s != FillStatus::kFeasible || value <= floor) return;
    while (lazy) {
      ++result_.lazy_calls;
      std::vector<Row> rows = lazy(current_);
      if (rows.empty()) break;
      result_.lazy_rows += static_cast<int>(rows.size());
      AddLateRows(std::move(rows));
      s = Fill(current_, has_incumbent_ ? &floor : nullptr, &value);
      if (s == FillStatus::kUnbounded) {
        unbounded_ = true;
        return;
      }
      if (s != FillStatus::kFeasible || value <= floor) break;
    }
    if (s != FillStatus::kFeasible || value <= floor) {
      RecheckIncumbent();
      return;
    }
    RecheckIncumbent();
    has_incumbent_ = true;
    best_ = value;
    incumbent_ = current_;
  }

  void AddLateRows(std::vector<Row> rows) {
    const int before = program_.num_rows();
    AddRows(std::move(rows));
    bool mixed = false;
    for (int r = before; r < program_.num_rows(); ++r) {
      bool only_int = true;
      for (const LinearTerm& t : program_.rows()[r].terms) {
        only_int = only_int && program_.variable(t.var).integer;
      }
      if (only_int) {
        late_int_rows_.push_back(r);
      } else {
        mixed = true;
      }
    }
    if (mixed) {
      // Keep the pruning rows fixed for this search.
      const std::vector<int> prune = int_rows_;
      Analyze();
      late_int_rows_.clear();
      for (int r : int_rows_) {
        if (!std::binary_search(prune.begin(), prune.end(), r)) {
          late_int_rows_.push_back(r);
        }
      }
      int_rows_ = prune;
    }
  }

  // Added rows must not lower the value of an accepted incumbent.
  void RecheckIncumbent() {
    if (!has_incumbent_ || result_.lazy_rows == checked_rows_) return;
    checked_rows_ = result_.lazy_rows;
    std::vector<double> v = incumbent_;
    double value = 0.0;
    const FillStatus s = Fill(v, nullptr, &value);
    if (s != FillStatus::kFeasible || value < best_ - 1e-6 *
                                                  std::max(1.0, std::abs(best_))) {
      throw SolverFailure("lazy rows cut off an accepted incumbent");
    }
  }

  bool RowOk(int r) const {
    const Row& row = program_.rows()[r];
    const double tol = kFeasTol * std::max(1.0, std::abs(row.rhs));
    const double lo = activity_[r] + rem_min_[r];
    const double hi = activity_[r] + rem_max_[r];
    switch (row.sense) {
      case RowSense::kLessEqual:
        return lo <= row.rhs + tol;
      case RowSense::kGreaterEqual:
        return hi >= row.rhs - tol;
      case RowSense::kEqual:
        return lo <= row.rhs + tol && hi >= row.rhs - tol;
    }
    return false;
  }

  void Search(size_t depth, const LazyRowSource& lazy) {
    if (unbounded_) return;
    if (++nodes_ > 64 * options_.max_assignments) {
      throw CapacityExceeded("built-in MIP search node limit reached");
    }
    if (depth == ints_.size()) {
      OnLeaf(lazy);
      return;
    }
    const int j = ints_[depth];
    for (double val = lo_[depth]; val <= hi_[depth]; val += 1.0) {
      current_[j] = val;
      bool ok = true;
      for (const auto& [r, c] : incidence_[depth]) {
        activity_[r] += c * val;
        rem_min_[r] -= std::min(c * lo_[depth], c * hi_[depth]);
        rem_max_[r] -= std::max(c * lo_[depth], c * hi_[depth]);
      }
      for (const auto& [r, c] : incidence_[depth]) ok = ok && RowOk(r);
      if (ok) Search(depth + 1, lazy);
      for (const auto& [r, c] : incidence_[depth]) {
        activity_[r] -= c * val;
        rem_min_[r] += std::min(c * lo_[depth], c * hi_[depth]);
        rem_max_[r] += std::max(c * lo_[depth], c * hi_[depth]);
      }
      if (unbounded_) return;
    }
  }

  BackendSolution SolveMip(const LazyRowSource& lazy) {
    Analyze();
    late_int_rows_.clear();
    const int m = program_.num_rows();
    lo_.clear();
    hi_.clear();
    incidence_.assign(ints_.size(), {});
    std::vector<int> depth_of(program_.num_variables(), -1);
    for (size_t d = 0; d < ints_.size(); ++d) {
      const Variable& v = program_.variable(ints_[d]);
      if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
        throw InvalidInput("built-in MIP needs finite bounds on integer " +
                           v.name);
      }
      lo_.push_back(std::ceil(v.lower - kFeasTol));
      hi_.push_back(std::floor(v.upper + kFeasTol));
      depth_of[ints_[d]] = static_cast<int>(d);
    }
    activity_.assign(m, 0.0);
    rem_min_.assign(m, 0.0);
    rem_max_.assign(m, 0.0);
    result_ = {};
    for (int r : int_rows_) {
      std::map<int, double> merged;
      for (const LinearTerm& t : program_.rows()[r].terms) {
        merged[t.var] += t.coef;
      }
      for (const auto& [j, c] : merged) {
        const int d = depth_of[j];
        incidence_[d].push_back({r, c});
        rem_min_[r] += std::min(c * lo_[d], c * hi_[d]);
        rem_max_[r] += std::max(c * lo_[d], c * hi_[d]);
      }
    }
    BackendSolution out;
    for (int r : int_rows_) {
      if (!RowOk(r)) {
        out.status = SolveStatus::kInfeasible;
        return out;
      }
    }
    current_.assign(program_.num_variables(), 0.0);
    has_incumbent_ = false;
    unbounded_ = false;
    checked_rows_ = 0;
    nodes_ = 0;
    best_ = -kInf;
    Search(0, lazy);
    out.work = result_.work;
    out.lazy_calls = result_.lazy_calls;
    out.lazy_rows = result_.lazy_rows;
    if (unbounded_) {
      out.status = SolveStatus::kUnbounded;
    } else if (has_incumbent_) {
      out.status = SolveStatus::kOptimal;
      out.x = incumbent_;
      out.objective = best_;
    }
    return out;
  }

  BuiltinOptions options_;
  std::vector<int> ints_, conts_;
  std::vector<int> int_rows_, late_int_rows_;
  std::vector<Component> components_;
  int analyzed_rows_ = 0;
  std::vector<double> lo_, hi_;
  std::vector<std::vector<std::pair<int, double>>> incidence_;
  std::vector<double> activity_, rem_min_, rem_max_;
  std::vector<double> current_, incumbent_;
  bool has_incumbent_ = false;
  bool unbounded_ = false;
  int checked_rows_ = 0;
  long long nodes_ = 0;
  double best_ = -kInf;
  BackendSolution result_;
};

}  // namespace

BackendCapabilities BuiltinBackend::capabilities() const {
  return {.name = "builtin",
          .supports_lp = true,
          .supports_mip = !options_.lp_only,
          .supports_lazy_cuts = !options_.lp_only};
}

std::unique_ptr<BackendModel> BuiltinBackend::DoLoad(
    const MathProgram& p) const {
  return std::make_unique<BuiltinModel>(p, options_);
}

// ---------------------------------------------------------------------------
// File backend.

namespace {

std::string Trim(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return {};
  const size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

double ParseDouble(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw InvalidInput("solution file: bad number '" + s + "'");
  }
  return v;
}

std::string ShellQuote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

std::string Replace(std::string s, const std::string& key,
                    const std::string& value) {
  for (size_t pos = s.find(key); pos != std::string::npos;
       pos = s.find(key, pos + value.size())) {
    s.replace(pos, key.size(), value);
  }
  return s;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class FileModel : public BackendModel {
 public:
  FileModel(MathProgram p, FileBackendOptions options)
      : BackendModel(std::move(p)), options_(std::move(options)) {}

  BackendSolution Solve(const LazyRowSource&) override {
    namespace fs = std::filesystem;
    static std::atomic<int> counter{0};
    const fs::path dir =
        options_.work_dir.empty() ? fs::temp_directory_path()
                                  : fs::path(options_.work_dir);
    const std::string stem = "rankopt-" + std::to_string(::getpid()) + "-" +
                             std::to_string(counter++);
    const fs::path lp = dir / (stem + ".lp");
    const fs::path sol = dir / (stem + ".sol");
    {
      std::ofstream out(lp);
      if (!out) throw SolverFailure("cannot write model file " + lp.string());
      out << WriteLpFormat(program_);
    }
    std::string args = Replace(options_.args, "{lp}", ShellQuote(lp.string()));
    args = Replace(args, "{sol}", ShellQuote(sol.string()));
    const std::string cmd = ShellQuote(options_.binary) + " " + args +
                            " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    const std::string text = ReadFile(sol);
    if (rc != 0 || text.empty()) {
      throw SolverFailure("external solver '" + options_.binary +
                          "' failed (exit " + std::to_string(rc) +
                          "); model kept at " + lp.string());
    }
    ParsedSolution parsed;
    try {
      parsed = ParseSolution(text, program_);
    } catch (const InvalidInput& e) {
      throw SolverFailure(std::string(e.what()) + "; model kept at " +
                          lp.string());
    }
    if (!options_.keep_files) {
      std::error_code ec;
      fs::remove(lp, ec);
      fs::remove(sol, ec);
    }
    BackendSolution out;
    out.status = parsed.status;
    if (parsed.status == SolveStatus::kOptimal) {
      out.x = std::move(parsed.x);
      out.objective = program_.ObjectiveValue(out.x);
    }
    return out;
  }

 private:
  FileBackendOptions options_;
};

}  // namespace

FileBackend::FileBackend(FileBackendOptions options)
    : options_(std::move(options)) {
  if (options_.binary.empty()) {
    if (const char* env = std::getenv(kSolverEnv)) options_.binary = env;
  }
  if (options_.args.empty()) {
    const char* env = std::getenv(kSolverArgsEnv);
    options_.args = env != nullptr ? env : "{lp} {sol}";
  }
}

BackendCapabilities FileBackend::capabilities() const {
  return {.name = "file:" + options_.binary,
          .supports_lp = true,
          .supports_mip = true,
          .supports_lazy_cuts = false};
}

std::unique_ptr<BackendModel> FileBackend::DoLoad(const MathProgram& p) const {
  if (options_.binary.empty()) {
    throw InvalidInput(std::string("no external solver configured; set ") +
                       kSolverEnv);
  }
  return std::make_unique<FileModel>(p, options_);
}

ParsedSolution ParseSolution(const std::string& text, const MathProgram& p) {
  std::map<std::string, int> index;
  for (int j = 0; j < p.num_variables(); ++j) index[p.variable(j).name] = j;
  ParsedSolution out;
  out.x.assign(p.num_variables(), 0.0);
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    line = Trim(line);
    if (!line.empty()) lines.push_back(line);
  }
  if (lines.empty()) throw InvalidInput("solution file is empty");
  auto set_value = [&](const std::string& name, const std::string& value) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw InvalidInput("solution file: unknown variable '" + name + "'");
    }
    out.x[it->second] = ParseDouble(value);
  };

  const std::string head = Lower(lines[0]);
  if (head[0] != '#') {
    if (head.rfind("optimal", 0) == 0) {
      out.status = SolveStatus::kOptimal;
    } else if (head.find("infeasible") != std::string::npos) {
      out.status = SolveStatus::kInfeasible;
      return out;
    } else if (head.rfind("unbounded", 0) == 0) {
      out.status = SolveStatus::kUnbounded;
      return out;
    } else {
      throw InvalidInput("solution file: unrecognized status line '" +
                         lines[0] + "'");
    }
    const size_t at = head.find("objective value");
    if (at == std::string::npos) {
      throw InvalidInput("solution file: missing objective value");
    }
    out.objective = ParseDouble(Trim(lines[0].substr(at + 15)));
    for (size_t l = 1; l < lines.size(); ++l) {
      std::string line = lines[l];
      if (line.rfind("**", 0) == 0) line = Trim(line.substr(2));
      std::istringstream ls(line);
      std::string idx, name, value;
      ls >> idx >> name >> value;
      if (value.empty()) throw InvalidInput("solution file: short line");
      set_value(name, value);
    }
    return out;
  }

  bool have_objective = false, have_status = false;
  for (const std::string& line : lines) {
    if (line[0] == '#') {
      const std::string body = Lower(Trim(line.substr(1)));
      const size_t eq = body.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = Trim(body.substr(0, eq));
      const std::string value = Trim(body.substr(eq + 1));
      if (key == "objective value") {
        out.objective = ParseDouble(value);
        have_objective = true;
      } else if (key == "status") {
        have_status = true;
        if (value == "optimal") {
          out.status = SolveStatus::kOptimal;
        } else if (value == "infeasible") {
          out.status = SolveStatus::kInfeasible;
        } else if (value == "unbounded") {
          out.status = SolveStatus::kUnbounded;
        } else {
          throw InvalidInput("solution file: unknown status '" + value + "'");
        }
      }
      continue;
    }
    std::istringstream ls(line);
    std::string name, value;
    ls >> name >> value;
    if (value.empty()) throw InvalidInput("solution file: short line");
    set_value(name, value);
  }
  if (!have_status) {
    if (!have_objective) {
      throw InvalidInput("solution file: no objective or status line");
    }
    out.status = SolveStatus::kOptimal;
  }
  return out;
}

std::string FormatSolution(const MathProgram& p, SolveStatus status,
                           std::span<const double> x) {
  std::ostringstream out;
  out << "# Solution for model " << (p.name().empty() ? "lp" : p.name())
      << '\n';
  if (status != SolveStatus::kOptimal) {
    out << "# Status = " << ToString(status) << '\n';
    return out.str();
  }
  out << "# Objective value = " << FormatNumber(p.ObjectiveValue(x)) << '\n';
  for (int j = 0; j < p.num_variables(); ++j) {
    out << p.variable(j).name << ' ' << FormatNumber(x[j]) << '\n';
  }
  return out.str();
}

std::unique_ptr<SolverBackend> MakeBackend(const std::string& name) {
  if (name == "builtin") return std::make_unique<BuiltinBackend>();
  if (name == "file") return std::make_unique<FileBackend>();
  throw InvalidInput("unknown backend '" + name + "' (builtin or file)");
}

}  // namespace rankopt
