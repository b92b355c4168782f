//
// Copyright 2026 The ri-median Authors
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
//

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace {

using ::testing::HasSubstr;
using ::testing::Not;

namespace fs = std::filesystem;

struct Outcome {
  int exit_code;
  std::string out;
};

Outcome RunCli(const std::string& args) {
  const std::string command =
      std::string(RI_MEDIAN_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  Outcome outcome{-1, ""};
  if (pipe == nullptr) return outcome;
  char buffer[4096];
  size_t read;
  while ((read = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
    outcome.out.append(buffer, read);
  }
  const int status = pclose(pipe);
  outcome.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return outcome;
}

fs::path WriteTemp(const std::string& name, const std::string& contents) {
  const fs::path path = fs::path(::testing::TempDir()) / name;
  std::ofstream out(path, std::ios::binary);
  out << contents;
  return path;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path ToyCsv() {
  std::string csv = "x\n";
  for (int i = 0; i < 200; ++i) csv += std::to_string(i * 4) + "\n";
  return WriteTemp("cli_toy.csv", csv);
}

TEST(CliTest, MedianPrintsReleaseWithoutTrueMedian) {
  const Outcome o = RunCli("median --input " + ToyCsv().string() +
                           " --column x --range 0:1000 --eps 2 --seed 3");
  ASSERT_EQ(o.exit_code, 0) << o.out;
  for (const char* key : {"\"median\"", "\"lower\"", "\"upper\"", "\"eps1\"",
                          "\"eps2\"", "\"step\"", "\"gamma1\"", "\"n\": 200"}) {
    EXPECT_THAT(o.out, HasSubstr(key));
  }
  EXPECT_THAT(o.out, Not(HasSubstr("true")));
  // Same seed, same release.
  EXPECT_EQ(o.out, RunCli("median --input " + ToyCsv().string() +
                          " --column x --range 0:1000 --eps 2 --seed 3")
                          .out);
}

TEST(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(RunCli("").exit_code, 1);
  EXPECT_EQ(RunCli("bogus").exit_code, 1);
  EXPECT_EQ(RunCli("median --column x --range 0:10").exit_code, 1);
  const std::string base =
      "median --input " + ToyCsv().string() + " --column x ";
  EXPECT_EQ(RunCli(base + "--range 10:0").exit_code, 1);
  EXPECT_EQ(RunCli(base + "--range 0:1000 --eps -1").exit_code, 1);
  EXPECT_EQ(RunCli(base + "--range 0:1000 --beta 2").exit_code, 1);
  EXPECT_EQ(RunCli(base + "--range 0:1000 --split best").exit_code, 1);
  EXPECT_EQ(RunCli(base + "--range 0:1000 --gamma-domain x").exit_code, 1);
  EXPECT_EQ(RunCli("--help").exit_code, 0);
}

TEST(CliTest, DataErrorsExitTwo) {
  EXPECT_EQ(RunCli("median --input /nonexistent.csv --column x --range 0:10")
                .exit_code,
            2);
  EXPECT_EQ(RunCli("median --input " + ToyCsv().string() +
                   " --column missing --range 0:1000")
                   .exit_code,
            2);
  // Values above the declared upper bound.
  EXPECT_EQ(RunCli("median --input " + ToyCsv().string() +
                   " --column x --range 0:100")
                   .exit_code,
            2);
}

TEST(CliTest, DegenerateInstanceExitsThree) {
  // A step of 2 / eps2 = 400 cannot fit in a one-element domain.
  const fs::path tiny = WriteTemp("cli_tiny.csv", "x\n0\n");
  EXPECT_EQ(RunCli("median --input " + tiny.string() +
                   " --column x --range 0:1 --domain-size 1 --eps 0.01")
                   .exit_code,
            3);
}

TEST(CliTest, SweepAndEmitPlots) {
  const fs::path spec = WriteTemp(
      "cli_spec.json",
      "{\"name\": \"toy\", \"path\": \"" + ToyCsv().string() +
          "\", \"column\": \"x\", \"range\": [0, 1000], \"domain_size\": "
          "1000, \"eps\": [1, 2], \"runs\": 5, \"seed\": 1}");
  const fs::path out = fs::path(::testing::TempDir()) / "cli_sweep";
  fs::remove_all(out);
  const Outcome sweep =
      RunCli("sweep --spec " + spec.string() + " --out " + out.string());
  ASSERT_EQ(sweep.exit_code, 0);
  EXPECT_THAT(sweep.out, HasSubstr("dataset,technique,split_policy"));
  for (const char* name : {"trials.csv", "trials.json", "summary.csv",
                           "summary.json", "fig_toy.csv", "timing.csv"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }

  const fs::path plots = fs::path(::testing::TempDir()) / "cli_plots";
  fs::remove_all(plots);
  ASSERT_EQ(RunCli("emit-plots --trials " + (out / "trials.csv").string() +
                   " --out " + plots.string())
                   .exit_code,
            0);
  EXPECT_EQ(Slurp(plots / "summary.csv"), Slurp(out / "summary.csv"));
  EXPECT_EQ(Slurp(plots / "fig_toy.csv"), Slurp(out / "fig_toy.csv"));

  EXPECT_EQ(RunCli("sweep --spec /nonexistent.json --out " + out.string())
                   .exit_code,
            2);
}

}  // namespace
