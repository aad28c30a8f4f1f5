// Copyright 2026 The dstq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "dstq/io.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string output;  // standard output and standard error interleaved
};

RunResult run(const std::string& args) {
  const std::string command = std::string("\"") + DSTQ_CLI_PATH + "\" " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) result.output.append(buf.data(), n);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dstq_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("m1.json", R"({"elements":["A","B"],"masses":{"":0.1,"A":0.2,"B":0.5,"A,B":0.2}})");
    write("m2.json", R"({"elements":["A","B"],"masses":{"":0.05,"A":0.45,"B":0.25,"A,B":0.25}})");
    write("m3.json", R"({"elements":["A","B"],"masses":{"":0.3,"A":0.1,"B":0.1,"A,B":0.5}})");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return "\"" + (dir_ / name).string() + "\""; }
  void write(const std::string& name, const std::string& text) const { dstq::write_text_file(dir_ / name, text); }
  dstq::MassFunction read_mass(const std::string& name) const { return dstq::read_mass_file(dir_ / name); }
  std::string masses(int p) const {
    std::string s;
    for (int k = 1; k <= p; ++k) s += " --mass " + path("m" + std::to_string(k) + ".json");
    return s;
  }

  fs::path dir_;
};

void expect_mass(const dstq::MassFunction& m, std::initializer_list<double> expected, double tol) {
  ASSERT_EQ(m.size(), expected.size());
  std::size_t i = 0;
  for (double v : expected) EXPECT_NEAR(m[i++], v, tol) << "index " << i - 1;
}

TEST_F(Cli, CombineReproducesReferenceTable) {
  ASSERT_EQ(run("combine --rule '&'" + masses(3) + " --out " + path("crc.json")).status, 0);
  expect_mass(read_mass("crc.json"), {0.647, 0.143, 0.185, 0.025}, 5e-4);
  ASSERT_EQ(run("combine --rule '|'" + masses(3) + " --out " + path("drc.json")).status, 0);
  expect_mass(read_mass("drc.json"), {0.0015, 0.0585, 0.0705, 0.8695}, 5e-4);
  ASSERT_EQ(run("combine --rule '^'" + masses(2) + " --out " + path("xor.json")).status, 0);
  expect_mass(read_mass("xor.json"), {0.27, 0.23, 0.19, 0.31}, 5e-4);
  ASSERT_EQ(run("combine --rule '(~(m1 & m2)) & (m2 | m3)'" + masses(3) + " --out " + path("custom.json")).status, 0);
  expect_mass(read_mass("custom.json"), {0.207, 0.343, 0.193, 0.257}, 5e-4);
}

TEST_F(Cli, CombineTextReportHasErrorColumn) {
  const auto r = run("combine" + masses(3));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("Simulated"), std::string::npos);
  EXPECT_NE(r.output.find("Actual"), std::string::npos);
  EXPECT_NE(r.output.find("Error"), std::string::npos);
  EXPECT_NE(r.output.find("{A,B}"), std::string::npos);
}

TEST_F(Cli, CombineShotsWithinSamplingError) {
  const auto r = run("combine --backend shots --shots 1024 --seed 3 --format csv" + masses(3));
  ASSERT_EQ(r.status, 0) << r.output;
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "subset,simulated,actual,error");
  int rows = 0;
  while (std::getline(lines, line)) {
    const double error = std::stod(line.substr(line.rfind(',') + 1));
    EXPECT_LE(std::abs(error), 0.05) << line;
    ++rows;
  }
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(run("combine --backend shots --shots 1024 --seed 3 --format csv" + masses(3)).output, r.output);
}

TEST_F(Cli, CombineNegation) {
  ASSERT_EQ(run("combine --rule '~m1' --mass " + path("m1.json") + " --out " + path("neg.json")).status, 0);
  expect_mass(read_mass("neg.json"), {0.2, 0.5, 0.2, 0.1}, 1e-12);
}

TEST_F(Cli, CircuitResources) {
  auto r = run("circuit --rule 'm1 & m2' --n 2 --format csv");
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(r.output, "width,x,ry,cry,mcx,total\n6,0,0,0,2,2\n");
  r = run("circuit --rule '(~(m1 & m2)) & (m2 | m3)' --n 2 --format csv");
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(r.output.substr(r.output.find('\n') + 1, 3), "12,");
  r = run("circuit --rule '~m1' --n 3 --format csv");
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(r.output, "width,x,ry,cry,mcx,total\n3,3,0,0,0,3\n");
  r = run("circuit --rule 'm1 & m2'");
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("# rule: m1 & m2"), std::string::npos);
}

TEST_F(Cli, EvalIsReproducible) {
  const std::string args = "eval --data \"" DSTQ_DATASET_DIR "/iris.csv\" --fractions 0.5:0.7:0.2 --repeats 3 --seed 11";
  ASSERT_EQ(run(args + " --out " + path("a.csv")).status, 0);
  ASSERT_EQ(run(args + " --threads 2 --out " + path("b.csv")).status, 0);
  const auto a = dstq::read_text_file(dir_ / "a.csv");
  EXPECT_EQ(a, dstq::read_text_file(dir_ / "b.csv"));
  EXPECT_EQ(a.rfind("fraction,repeat,seed,accuracy\n", 0), 0U);
  EXPECT_NE(a.find("\nfraction,repeats,mean_accuracy,std_accuracy\n"), std::string::npos);
  const auto classical = run(args + " --backend classical");
  ASSERT_EQ(classical.status, 0);
  EXPECT_EQ(classical.output, a);
}

TEST_F(Cli, BadCsvNamesLine) {
  write("bad.csv", "x,class\n1.0,a\n2.0,b\noops,a\n");
  const auto r = run("train --data " + path("bad.csv"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find(":4"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("dstq: error:"), std::string::npos) << r.output;
}

TEST_F(Cli, PredictRejectsUnknownClass) {
  write("train.csv", "x,class\n1.0,a\n1.2,a\n5.0,b\n5.3,b\n");
  write("test.csv", "x,class\n1.1,a\n4.0,c\n");
  ASSERT_EQ(run("train --components 1 --data " + path("train.csv") + " --out " + path("model.json")).status, 0);
  const auto r = run("predict --model " + path("model.json") + " --data " + path("test.csv"));
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("c"), std::string::npos);
}

TEST_F(Cli, PredictOnCraftedModel) {
  // Densities at x = 4.7 peak at 1.1 for the second class and 0.1245 for the third.
  write("model.json", R"({"frame":["t1","t2","t3"],"attributes":["x"],"components":1,"grid":[[
      [{"weight":1,"mean":1.46,"variance":0.03}],
      [{"weight":1,"mean":4.7,"variance":0.13153252}],
      [{"weight":1,"mean":4.7,"variance":10.2679854}]]]})");
  write("point.csv", "x,class\n4.7,t2\n");
  for (const char* backend : {"exact", "classical"}) {
    const auto r = run("predict --backend " + std::string(backend) + " --model " + path("model.json") + " --data " +
                       path("point.csv"));
    ASSERT_EQ(r.status, 0) << r.output;
    std::istringstream lines(r.output);
    std::string header;
    std::string row;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_EQ(header, "row,predicted,actual,betp_t1,betp_t2,betp_t3");
    EXPECT_EQ(row.rfind("0,t2,t2,", 0), 0U) << row;
  }
}

TEST_F(Cli, UsageErrors) {
  EXPECT_NE(run("").status, 0);
  EXPECT_NE(run("combine").status, 0);
  EXPECT_NE(run("combine --rule 'm1 &' --mass " + path("m1.json")).status, 0);
  EXPECT_NE(run("combine --rule 'm1 & m2' --mass " + path("m1.json")).status, 0);
  EXPECT_NE(run("circuit --rule '&' --format xml").status, 0);
}

}  // namespace
