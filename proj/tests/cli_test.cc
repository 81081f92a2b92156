// Copyright 2026 The Relin Authors
//
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


#include "cli.h"

#include <filesystem>
#include <sstream>

#include <gtest/gtest.h>

#include "relin/io.h"
#include "test_util.h"

namespace relin::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("relin_cli_" + std::string(::testing::UnitTest::GetInstance()
                                           ->current_test_info()
                                           ->name()));
    fs::create_directories(dir_);
    Circuit c = Circuit::Build(relin::testing::ExampleRecords());
    WriteFile(Path("ex.json"), FormatCircuit(c, Semantics::Standard()));
    WriteFile(Path("baseline.json"),
              R"({"relin": {"u": 1, "P1": 1, "Pfinal": 1}})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return dir_ / name; }

  int Call(std::vector<std::string> args) {
    args.insert(args.begin(), "relin");
    out_.str("");
    err_.str("");
    return Main(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, ValidateModes) {
  EXPECT_EQ(Call({"validate", Path("ex.json")}), 0);
  EXPECT_NE(out_.str().find("mode: lenient\nok: 12 vertices"), std::string::npos)
      << out_.str();
  EXPECT_EQ(Call({"validate", Path("ex.json"), "--strict"}), 0);

  WriteFile(Path("fan.json"), R"({"vertices": [
      {"id": "a", "kind": "input"},
      {"id": "s", "kind": "add", "parents": ["a", "a"]}]})");
  EXPECT_EQ(Call({"validate", Path("fan.json")}), 0);
  EXPECT_EQ(Call({"validate", Path("fan.json"), "--strict"}), 1);
  EXPECT_NE(out_.str().find("violation: DegreeViolation"), std::string::npos)
      << out_.str();
}

TEST_F(CliTest, EvalBaseline) {
  EXPECT_EQ(Call({"eval", Path("ex.json"), "--plan", Path("baseline.json"),
                  "--cost", "prose", "--km", "1", "--kr", "5"}),
            0)
      << err_.str();
  const std::string s = out_.str();
  EXPECT_NE(s.find("semantics: standard\ncost_mode: prose\nk_m: 1\nk_r: 5\n"),
            std::string::npos)
      << s;
  EXPECT_NE(s.find("total: 27\n"), std::string::npos) << s;
}

TEST_F(CliTest, EvalInfeasibleExitsTwo) {
  WriteFile(Path("bad.json"), R"({"relin": {"u": 5}})");
  EXPECT_EQ(Call({"eval", Path("ex.json"), "--plan", Path("bad.json")}), 2);
  EXPECT_NE(err_.str().find("InfeasibleRelin"), std::string::npos) << err_.str();
  WriteFile(Path("neg.json"), R"({"relin": {"I1": 1}})");
  EXPECT_EQ(Call({"eval", Path("ex.json"), "--plan", Path("neg.json")}), 2);
}

TEST_F(CliTest, SolveMethodsAndResultFile) {
  EXPECT_EQ(Call({"solve", Path("ex.json"), "--method", "brute", "--cost",
                  "prose", "--kr", "5", "-o", Path("r.json")}),
            0)
      << err_.str();
  EXPECT_NE(out_.str().find("total: 16\n"), std::string::npos) << out_.str();
  SolveResultFile r = ParseSolveResult(ReadFile(Path("r.json")));
  EXPECT_EQ(r.method, "brute");
  EXPECT_EQ(r.cost.total, Rational(16));

  // A solve result doubles as a plan.
  EXPECT_EQ(Call({"eval", Path("ex.json"), "--plan", Path("r.json"), "--cost",
                  "prose", "--kr", "5"}),
            0);
  EXPECT_NE(out_.str().find("total: 16\n"), std::string::npos);

  EXPECT_EQ(Call({"solve", Path("ex.json"), "--method", "baseline", "--cost",
                  "prose", "--kr", "5"}),
            0);
  EXPECT_NE(out_.str().find("total: 27\n"), std::string::npos);

  EXPECT_EQ(Call({"solve", Path("ex.json"), "--method", "dp"}), 1);
  EXPECT_NE(err_.str().find("NotSingleOutput"), std::string::npos);
}

TEST_F(CliTest, SolveCapExitsThree) {
  EXPECT_EQ(Call({"solve", Path("ex.json"), "--method", "brute", "--cap", "2"}),
            3);
  EXPECT_NE(err_.str().find("SearchSpaceTooLarge"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Call({"solve", Path("ex.json"), "--method", "magic"}), 1);
  EXPECT_EQ(Call({"frobnicate"}), 1);
  EXPECT_EQ(Call({"eval", Path("missing.json"), "--plan", Path("baseline.json")}),
            1);
  EXPECT_EQ(Call({"eval", Path("ex.json"), "--plan", Path("baseline.json"),
                  "--kr", "-1"}),
            1);
  EXPECT_EQ(Call({"solve", Path("ex.json"), "--method", "restricted"}), 1);
  EXPECT_EQ(Call({"--help"}), 0);
}

TEST_F(CliTest, ExportsToFiles) {
  EXPECT_EQ(Call({"export-dot", Path("ex.json"), "--plan", Path("baseline.json"),
                  "-o", Path("g.dot")}),
            0);
  EXPECT_NE(ReadFile(Path("g.dot")).find("l=2"), std::string::npos);
  EXPECT_EQ(Call({"export-lp", Path("ex.json"), "--kr", "1/2"}), 0);
  relin::testing::LpModel lp = relin::testing::ParseLp(out_.str());
  EXPECT_EQ(lp.rows.size(), 9u);
}

TEST_F(CliTest, KnapsackPipeline) {
  WriteFile(Path("ks.json"), R"({"values": [1, 2], "weights": [2, 3], "capacity": 4})");
  EXPECT_EQ(Call({"knapsack", Path("ks.json"), "--brute"}), 0);
  EXPECT_EQ(out_.str(), "selection: 0 1\nvalue: 2\n");

  EXPECT_EQ(Call({"reduce", Path("ks.json"), "-o", Path("g.json"), "--marks",
                  Path("m.json")}),
            0)
      << err_.str();
  EXPECT_NE(out_.str().find("K: 37\n"), std::string::npos) << out_.str();
  EXPECT_EQ(Call({"validate", Path("g.json")}), 0);
  EXPECT_EQ(Call({"solve", Path("g.json"), "--method", "restricted", "--marks",
                  Path("m.json"), "-o", Path("r.json")}),
            0)
      << err_.str();
  EXPECT_NE(out_.str().find("cost_mode: prose"), std::string::npos);
  EXPECT_EQ(Call({"decode", Path("r.json"), "--marks", Path("m.json")}), 0)
      << err_.str();
  EXPECT_EQ(out_.str(), "selection: 0 1\nvalue: 2\n");
}

TEST_F(CliTest, KnapsackTooManyItemsExitsThree) {
  std::string ones = "1";
  for (int i = 1; i < 21; ++i) ones += ", 1";
  WriteFile(Path("big.json"), "{\"values\": [" + ones + "], \"weights\": [" +
                                  ones + "], \"capacity\": 3}");
  EXPECT_EQ(Call({"knapsack", Path("big.json")}), 3);
}

TEST(CliRunTest, UnknownCommand) {
  std::ostringstream out, err;
  CommandConfig config;
  config.command = "nope";
  EXPECT_EQ(cli::Run(config, out, err), 1);
}

}  // namespace
}  // namespace relin::cli
