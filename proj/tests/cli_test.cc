// Copyright 2026 The ProbNetKAT authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "probnetkat/cli.h"

namespace probnetkat {
namespace {

const std::string kData = PNK_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("pnk_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    std::filesystem::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::string Slurp(const std::string& name) {
    std::ifstream in(dir_ / name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::filesystem::path dir_;
};

TEST_F(CliTest, CheckValidProgram) {
  Result r = Invoke({"check", Write("ok.nkat", "sw=1; (pt:=2 +[1/3] pt:=1)*")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("ok"), std::string::npos);
}

TEST_F(CliTest, CheckKindError) {
  Result r = Invoke({"check", Write("bad.nkat", "~(dup*)")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("kind"), std::string::npos);
}

TEST_F(CliTest, CheckSyntaxErrorIsLocated) {
  std::string path = Write("syn.nkat", "sw=1;\npt:=");
  Result r = Invoke({"check", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(path + ":2:"), std::string::npos) << r.err;
}

TEST_F(CliTest, CheckMissingFile) {
  EXPECT_EQ(Invoke({"check", (dir_ / "absent.nkat").string()}).code, 1);
}

TEST_F(CliTest, BadArgumentsAndHelp) {
  EXPECT_EQ(Invoke({}).code, 2);
  EXPECT_EQ(Invoke({"frobnicate"}).code, 2);
  Result help = Invoke({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("Topology JSON"), std::string::npos);
  EXPECT_NE(help.out.find("Exit codes"), std::string::npos);
}

TEST_F(CliTest, RunSkipEchoesInput) {
  Result r = Invoke({"run", Write("skip.nkat", "skip"), "--input", kData + "/kernel_input.json",
                  "--schema", kData + "/kernel_schema.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1U);
  EXPECT_EQ(j[0]["prob"], "1/1");
  EXPECT_EQ(j[0]["set"][0][0]["sw"], 0);
}

TEST_F(CliTest, RunKernelPr) {
  Result r = Invoke({"run", kData + "/kernel_pr.nkat", "--input", kData + "/kernel_input.json",
                  "--schema", kData + "/kernel_schema.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 3U);
  EXPECT_EQ(j[0]["prob"], "1/4");
  EXPECT_EQ(j[1]["prob"], "1/4");
  EXPECT_EQ(j[2]["prob"], "1/2");
  EXPECT_EQ(j[2]["set"].size(), 2U);
}

TEST_F(CliTest, RunIsDeterministic) {
  std::vector<std::string> args = {"run", kData + "/kernel_pr.nkat", "--input",
                                   kData + "/kernel_input.json", "--schema",
                                   kData + "/kernel_schema.json"};
  EXPECT_EQ(Invoke(args).out, Invoke(args).out);
}

TEST_F(CliTest, RunStarNeedsBound) {
  std::string prog = Write("star.nkat", "(pt:=1 +[1/2] pt:=2)*");
  std::vector<std::string> args = {"run", prog, "--input", kData + "/kernel_input.json",
                                   "--schema", kData + "/kernel_schema.json"};
  Result r = Invoke(args);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("--n"), std::string::npos);
  args.insert(args.end(), {"--n", "2"});
  EXPECT_EQ(Invoke(args).code, 0);
}

TEST_F(CliTest, RunSchemaViolation) {
  Result r = Invoke({"run", Write("far.nkat", "pt:=9"), "--input", kData + "/kernel_input.json",
                  "--schema", kData + "/kernel_schema.json"});
  EXPECT_EQ(r.code, 2);
}

TEST_F(CliTest, CaseStudyWritesCsvAndSummary) {
  std::string out = (dir_ / "out").string();
  Result r = Invoke({"casestudy", "--topology", kData + "/ring4_topology.json", "--traffic",
                  kData + "/ring4_traffic.csv", "--scheme", "ecmp", "--query", "maxcong",
                  "--query", "throughput", "--n-max", "6", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  std::string csv = Slurp("out/maxcong.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,query,value_num,value_den,value_float,stabilized");
  EXPECT_NE(csv.find("7,16,0.4375,true"), std::string::npos);
  auto summary = nlohmann::json::parse(Slurp("out/summary.json"));
  EXPECT_EQ(summary["queries"][0]["final"]["value"], "7/16");
  EXPECT_EQ(summary["queries"][0]["link"], "S1:2->S2:1");
  EXPECT_EQ(summary["queries"][1]["final"]["value"], "1/1");
  EXPECT_EQ(summary["scheme"], "ecmp");
}

TEST_F(CliTest, CaseStudySpf) {
  std::string out = (dir_ / "spf").string();
  Result r = Invoke({"casestudy", "--topology", kData + "/ring4_topology.json", "--traffic",
                  kData + "/ring4_traffic.csv", "--scheme", "spf", "--n-max", "5", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  auto summary = nlohmann::json::parse(r.out);
  EXPECT_EQ(summary["queries"][0]["final"]["value"], "3/4");
}

TEST_F(CliTest, CaseStudyRandomWalkIsMonotone) {
  std::string out = (dir_ / "rw").string();
  Result r = Invoke({"casestudy", "--topology", kData + "/ring4_topology.json", "--traffic",
                  kData + "/uniform4_traffic.csv", "--scheme", "randomwalk", "--query",
                  "throughput", "--n-max", "10", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  auto summary = nlohmann::json::parse(r.out);
  EXPECT_EQ(summary["queries"][0]["monotone"], true);
  EXPECT_EQ(summary["with_dup"], false);
}

TEST_F(CliTest, CaseStudyErrors) {
  std::string out = (dir_ / "err").string();
  std::vector<std::string> base = {"casestudy", "--topology", kData + "/ring4_topology.json",
                                   "--traffic", kData + "/ring4_traffic.csv", "--out", out};
  auto with = [&](std::vector<std::string> extra) {
    std::vector<std::string> args = base;
    args.insert(args.end(), extra.begin(), extra.end());
    return Invoke(args).code;
  };
  EXPECT_EQ(with({"--scheme", "teleport"}), 2);
  EXPECT_EQ(with({"--query", "jitter"}), 2);
  EXPECT_EQ(with({"--n-max", "0"}), 2);
  EXPECT_EQ(with({"--scheme", "oblivious:" + (dir_ / "none.json").string()}), 1);
  EXPECT_EQ(Invoke({"casestudy", "--topology", (dir_ / "none.json").string(), "--traffic",
                 kData + "/ring4_traffic.csv"})
                .code,
            1);
}

TEST_F(CliTest, VerifyMeasure) {
  std::string input = Write("mu.json", R"([
    {"set": [[{"sw": 1, "pt": 1}]], "prob": "1/2"},
    {"set": [[{"sw": 1, "pt": 1}], [{"sw": 2, "pt": 2}]], "prob": "1/4"},
    {"set": [], "prob": "1/4"}])");
  Result r = Invoke({"verify-measure", "--input", input, "--schema", kData + "/kernel_schema.json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["basis_size"], 2);
  EXPECT_EQ(j["subsets"].size(), 4U);
  EXPECT_EQ(j["subsets"][1]["basic_open"], "3/4");
}

TEST_F(CliTest, VerifyMeasureRejectsBadInput) {
  std::string input = Write("bad.json", R"([{"set": [], "prob": "1/2"}])");
  EXPECT_EQ(Invoke({"verify-measure", "--input", input, "--schema", kData + "/kernel_schema.json"}).code, 2);
  std::string broken = Write("broken.json", "[{");
  EXPECT_EQ(Invoke({"verify-measure", "--input", broken, "--schema", kData + "/kernel_schema.json"}).code, 2);
}

}  // namespace
}  // namespace probnetkat
