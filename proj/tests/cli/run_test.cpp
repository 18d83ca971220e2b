// Copyright 2026 The capot Authors
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


#include "capot_cli/run.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "capot/instances.hpp"
#include "capot/io.hpp"
#include "json.hpp"
#include "support/fixtures.hpp"

namespace capot::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class RunTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("capot_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_problem(const std::string& name, const Problem& p) {
    const fs::path path = dir_ / name;
    write_problem_json(path, p);
    return path;
  }

  int invoke(const RunConfig& config) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(config, out, err);
    stdout_ = out.str();
    stderr_ = err.str();
    if (!stdout_.empty() && config.command != Command::kGenerate) report_ = Json::parse(stdout_);
    return code;
  }

  fs::path dir_;
  std::string stdout_;
  std::string stderr_;
  Json report_;
};

TEST_F(RunTest, FeasibleT1) {
  RunConfig c;
  c.command = Command::kFeasible;
  c.input_path = write_problem("t1.json", testing::t1());
  EXPECT_EQ(invoke(c), kExitOk);
  EXPECT_TRUE(report_["feasible"].get<bool>());
}

TEST_F(RunTest, InfeasibleZeroCapacityCarriesRectangle) {
  RunConfig c;
  c.command = Command::kFeasible;
  c.input_path = write_problem(
      "zero.json", testing::t1().with_capacity(Kernel::constant(2, 2, 0.0, KernelKind::kCapacity)));
  c.oracle = true;
  c.report_path = dir_ / "report.json";
  EXPECT_EQ(invoke(c), kExitInfeasible);
  EXPECT_FALSE(report_["feasible"].get<bool>());
  EXPECT_EQ(report_["rectangle"]["A"], Json::array({0, 1}));
  EXPECT_EQ(report_["rectangle"]["B"], Json::array({0, 1}));
  EXPECT_NEAR(report_["deficit"].get<double>(), 1.0, 1e-12);
  EXPECT_TRUE(report_["oracle"]["agrees"].get<bool>());
  EXPECT_EQ(Json::parse(read_text_file(*c.report_path)), report_);
}

TEST_F(RunTest, SolveWithOracleThenVerify) {
  RunConfig c;
  c.command = Command::kSolve;
  c.input_path = write_problem("t4.json", testing::t4());
  c.oracle = true;
  c.plan_path = dir_ / "plan.csv";
  c.report_path = dir_ / "solve.json";
  ASSERT_EQ(invoke(c), kExitOk);
  EXPECT_NEAR(report_["value"].get<double>(), testing::kT4Value, 1e-12);
  EXPECT_LE(report_["oracle"]["abs_diff"].get<double>(), 1e-9);
  const Json counts = report_["counts"];
  EXPECT_EQ(counts["zero"].get<int>() + counts["saturated"].get<int>() +
                counts["fractional"].get<int>(),
            9);

  RunConfig v;
  v.command = Command::kVerify;
  v.input_path = c.input_path;
  v.plan_path = c.plan_path;
  v.potentials_path = c.report_path;
  EXPECT_EQ(invoke(v), kExitOk);
  EXPECT_TRUE(report_["optimal"].get<bool>());

  write_text_file(dir_ / "bad.json", R"({"u": [1, 0, 0], "v": [0, 0, 0]})");
  v.potentials_path = dir_ / "bad.json";
  EXPECT_EQ(invoke(v), kExitNotReached);
  EXPECT_FALSE(report_["optimal"].get<bool>());
  EXPECT_FALSE(report_["violations"].empty());
}

TEST_F(RunTest, SolveInfeasible) {
  RunConfig c;
  c.command = Command::kSolve;
  c.input_path = write_problem(
      "half.json", testing::t1().with_capacity(Kernel::constant(2, 2, 0.5, KernelKind::kCapacity)));
  EXPECT_EQ(invoke(c), kExitInfeasible);
  EXPECT_NEAR(report_["deficit"].get<double>(), 0.5, 1e-12);
}

TEST_F(RunTest, DualWithAndWithoutTarget) {
  RunConfig c;
  c.command = Command::kDual;
  c.input_path = write_problem("t3.json", testing::t3());
  c.target_from_primal = true;
  EXPECT_EQ(invoke(c), kExitOk);
  EXPECT_TRUE(report_["converged"].get<bool>());
  EXPECT_LE(report_["gap"].get<double>(), 1e-6);
  EXPECT_TRUE(report_["coercivity"]["inequalities_hold"].get<bool>());
  EXPECT_TRUE(report_["coercivity"].contains("oscillation"));

  // Without a target only the step floor ends the run, far beyond 100 steps.
  c.input_path = write_problem("r.json", generate_instance("random_feasible", 5, 6, 1));
  c.target_from_primal = false;
  c.max_iter = 100;
  EXPECT_EQ(invoke(c), kExitNotReached);
  EXPECT_TRUE(report_["gap"].is_null());
}

TEST_F(RunTest, Sweep) {
  RunConfig c;
  c.command = Command::kSweep;
  c.input_path = write_problem("t4.json", testing::t4());
  c.ks = {4.0, 2.0};
  EXPECT_EQ(invoke(c), kExitOk);
  ASSERT_EQ(report_["points"].size(), 2u);
  EXPECT_EQ(report_["points"][0]["k"].get<double>(), 2.0);
  EXPECT_NEAR(report_["unconstrained_value"].get<double>(),
              testing::kProduct3UnconstrainedValue, 1e-12);
  c.ks = {1.0};
  EXPECT_EQ(invoke(c), kExitInputError);
}

TEST_F(RunTest, Generate) {
  RunConfig c;
  c.command = Command::kGenerate;
  c.kind = "random_tight";
  c.m = 3;
  c.n = 5;
  c.seed = 4;
  c.output_path = dir_ / "gen.json";
  EXPECT_EQ(invoke(c), kExitOk);
  const Problem p = read_problem_json(*c.output_path);
  EXPECT_EQ(p.m(), 3u);
  EXPECT_EQ(p.n(), 5u);
  c.kind = "unknown";
  EXPECT_EQ(invoke(c), kExitInputError);
}

TEST_F(RunTest, InputErrors) {
  RunConfig c;
  c.command = Command::kSolve;
  c.input_path = dir_ / "missing.json";
  EXPECT_EQ(invoke(c), kExitInputError);
  EXPECT_NE(stderr_.find("missing.json"), std::string::npos);

  write_text_file(dir_ / "broken.json",
                  R"({"version": 1, "m": 2, "n": 2, "f": [1, 1], "g": [1, "x"], "hbar": 1,
                      "s": [0, 1, 1, 0]})");
  c.input_path = dir_ / "broken.json";
  EXPECT_EQ(invoke(c), kExitInputError);
  EXPECT_NE(stderr_.find("g"), std::string::npos);

  c.input_path = write_problem("t1.json", testing::t1());
  c.tol = -1.0;
  EXPECT_EQ(invoke(c), kExitInputError);

  RunConfig v;
  v.command = Command::kVerify;
  v.input_path = c.input_path;
  EXPECT_EQ(invoke(v), kExitInputError);
}

TEST_F(RunTest, ReportsAreDeterministic) {
  RunConfig c;
  c.command = Command::kDual;
  c.input_path = write_problem("t4.json", testing::t4());
  c.target_from_primal = true;
  invoke(c);
  const std::string first = stdout_;
  invoke(c);
  EXPECT_EQ(stdout_, first);
}

}  // namespace
}  // namespace capot::cli
