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

// Runs the command line tool, and the file backend with the tool's lp-solve
// subcommand standing in for an external solver.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "doctest.h"
#include "fixtures.h"
#include "json.hpp"
#include "rankopt/benders.h"
#include "rankopt/cli_eval.h"
#include "rankopt/error.h"
#include "rankopt/formulations.h"

namespace rankopt {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

const std::string kCli = RANKOPT_CLI_PATH;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("rankopt-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

int RunCli(const std::string& args) {
  const std::string cmd = "RANKOPT_SOLVER=/bin/false '" + kCli + "' " + args +
                          " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

FileBackend LpSolveBackend(const std::string& dir, const std::string& dialect) {
  return FileBackend({.binary = kCli,
                      .args = "lp-solve {lp} {sol} --dialect " + dialect,
                      .work_dir = dir,
                      .keep_files = false});
}

TEST_CASE("exit codes") {
  TempDir dir;
  const std::string inst = dir / "b.json";
  SaveModel(inst, testing::InstanceB());
  CHECK(RunCli("solve '" + inst + "'") == 0);
  CHECK(RunCli("solve '" + (dir / "missing.json") + "'") == 2);
  CHECK(RunCli("solve '" + inst + "' --method nope") == 2);
  CHECK(RunCli("solve '" + inst + "' --budget 9") == 2);
  CHECK(RunCli("no-such-command") == 2);
  CHECK(RunCli("--help") == 0);
  WriteFile(dir / "bad.json", "{\"n_products\": 2}");
  CHECK(RunCli("solve '" + (dir / "bad.json") + "'") == 2);
  // A solver binary that fails.
  CHECK(RunCli("solve '" + inst + "' --backend file") == 3);
}

TEST_CASE("solve writes the report") {
  TempDir dir;
  const std::string inst = dir / "b.json";
  SaveModel(inst, testing::InstanceB());
  for (const std::string method : {"benders", "base-mip", "xset-mip", "enum"}) {
    const std::string out = dir / (method + ".json");
    REQUIRE(RunCli("solve '" + inst + "' --method " + method + " --out '" +
                   out + "'") == 0);
    const json r = json::parse(ReadFile(out));
    CHECK(std::abs(r["objective"].get<double>() - 100.0) <= 1e-6);
    CHECK(r["method"] == method);
  }
  const json b = json::parse(ReadFile(dir / "benders.json"));
  CHECK(b["phase1"]["status"] == "done");
  CHECK(b["phase2"]["cuts"] == 0);
}

TEST_CASE("generate, evaluate and benchmark") {
  TempDir dir;
  const std::string inst = dir / "g.json";
  REQUIRE(RunCli("generate --n 8 --m 3 --k-tilde 300 --cutoff 3 "
                 "--transactions 2000 --budget 3 --seed 5 --out '" +
                 inst + "'") == 0);
  const RankingModel model = LoadModel(inst);
  CHECK(model.instance().n_products() == 8);
  CHECK(model.instance().budget() == 3);
  for (const Ranking& r : model.rankings()) CHECK(r.length() <= 3);
  const Sidecar s = SidecarFromJson(ReadFile(inst + ".truth.json"));
  CHECK(s.config.seed == 5);

  const std::string eval = dir / "eval.json";
  REQUIRE(RunCli("evaluate '" + inst + "' --validation-rows 2000 --folds 3 " +
                 "--out '" + eval + "'") == 0);
  const json e = json::parse(ReadFile(eval));
  CHECK(e["validation_rows"] == 2000);
  CHECK(e["cross_validation"]["folds"].size() == 3);

  const std::string csv = dir / "bench.csv";
  const std::string js = dir / "bench.json";
  REQUIRE(RunCli("benchmark --n 8 --m 3 --k-tilde 300 --cutoff 3 "
                 "--transactions 2000 --seeds 1,2 --csv '" +
                 csv + "' --json-out '" + js + "'") == 0);
  const json rows = json::parse(ReadFile(js));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0]["replications"] == 2);
  CHECK(ReadFile(csv).rfind("method,", 0) == 0);

  CHECK(RunCli("cuts-debug '" + inst + "' --x 1,0,1,0,1,0,1,0 --phase 2") ==
        0);
  CHECK(RunCli("cuts-debug '" + inst + "' --x 1,0 --phase 2") == 2);
}

TEST_CASE("file backend through lp-solve, both dialects") {
  TempDir dir;
  for (const std::string dialect : {"hash", "cbc"}) {
    const FileBackend backend = LpSolveBackend(dir / "", dialect);
    CHECK(backend.capabilities().supports_mip);
    CHECK_FALSE(backend.capabilities().supports_lazy_cuts);
    const RankingModel b = testing::InstanceB();
    const BackendSolution lp =
        backend.Load(LpRelaxation(BuildBaseMip(b)))->Solve();
    CHECK(std::abs(lp.objective - 112.5) <= 1e-6);
    const BackendSolution mip = backend.Load(BuildXsetMip(BuildExclusionSets(b)))
                                    ->Solve();
    CHECK(std::abs(mip.objective - 100.0) <= 1e-6);
    CounterRng rng(91);
    for (int t = 0; t < 3; ++t) {
      const RankingModel m =
          testing::RandomModel(rng, {.n = 7, .k = 12, .budget = 3});
      const double want =
          SolveWithMethod(m, Method::kEnumerate, BuiltinBackend()).objective;
      CHECK(std::abs(SolveTwoPhase(m, backend).objective - want) <= 1e-6);
      CHECK(std::abs(SolveWithMethod(m, Method::kBaseMip, backend).objective -
                     want) <= 1e-6);
    }
  }
  CHECK(fs::is_empty(dir / ""));
}

}  // namespace
}  // namespace rankopt
