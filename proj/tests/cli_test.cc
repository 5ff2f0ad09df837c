// Copyright 2026 The iasolve Authors.
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

#include <filesystem>
#include <fstream>
#include <string>

#include "cli_util.h"
#include "gtest/gtest.h"
#include "iasolve/bench.h"
#include "json.hpp"

namespace iasolve {
namespace {

namespace fs = std::filesystem;
using testing::CsvWithoutTiming;
using testing::FreshDir;
using testing::RunCli;
using testing::Slurp;
using testing::WithoutTiming;

const std::string kWorkedExample = std::string(IASOLVE_TEST_DATA) + "/worked_example.json";

TEST(CliTest, SolveWorkedExample) {
  fs::path dir = FreshDir("iasolve_cli_solve");
  fs::path out = dir / "r.json";
  fs::path trace = dir / "t.json";
  ASSERT_EQ(RunCli("solve " + kWorkedExample + " --epsilon 1e-9 -o " + out.string() + " --trace " +
                   trace.string()),
            0);
  auto j = nlohmann::json::parse(Slurp(out));
  EXPECT_EQ(j["status"], "optimal");
  EXPECT_NEAR(j["objective"].get<double>(), -88.14, 0.01);
  EXPECT_EQ(j["x"]["x1"], 2.0);
  EXPECT_EQ(j["x"]["x2"], 3.0);
  EXPECT_EQ(j["iterations"], 2);
  EXPECT_TRUE(fs::exists(trace));
}

TEST(CliTest, ExitCodes) {
  fs::path dir = FreshDir("iasolve_cli_exit");
  EXPECT_EQ(RunCli("solve " + (dir / "missing.json").string()), 3);
  EXPECT_EQ(RunCli("solve " + kWorkedExample + " --epsilon 1e-12 --max-iterations 1"), 2);
  EXPECT_EQ(RunCli("frobnicate"), 3);
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{\"variables\": [";
  }
  EXPECT_EQ(RunCli("solve " + (dir / "bad.json").string()), 3);
  fs::path gen = dir / "tight.json";
  ASSERT_EQ(RunCli("generate pt --m 2 --n 3 --rho 0.9 --sourcing single -o " + gen.string()), 0);
  EXPECT_EQ(RunCli("solve " + gen.string()), 1);
  EXPECT_EQ(RunCli("oracle " + gen.string() + " --method assign"), 1);
}

TEST(CliTest, GenerateWritesSidecarAndIsDeterministic) {
  fs::path dir = FreshDir("iasolve_cli_generate");
  for (const char* name : {"a.json", "b.json"}) {
    ASSERT_EQ(RunCli("generate csink --n 6 --m 2 --family quartic --seed 4 -o " +
                     (dir / name).string()),
              0);
  }
  EXPECT_EQ(Slurp(dir / "a.json"), Slurp(dir / "b.json"));
  ASSERT_TRUE(fs::exists(dir / "a.meta.json"));
  EXPECT_EQ(Slurp(dir / "a.meta.json"), Slurp(dir / "b.meta.json"));
  ASSERT_EQ(RunCli("generate csink --n 6 --m 2 --family quartic --seed 5 -o " +
                   (dir / "c.json").string()),
            0);
  EXPECT_NE(Slurp(dir / "a.json"), Slurp(dir / "c.json"));
}

TEST(CliTest, OracleAndSolveAgree) {
  fs::path dir = FreshDir("iasolve_cli_oracle");
  ASSERT_EQ(RunCli("generate csink --n 5 --m 2 --seed 7 -o " + (dir / "p.json").string()), 0);
  ASSERT_EQ(RunCli("oracle " + (dir / "p.json").string() + " -o " + (dir / "o.json").string()),
            0);
  ASSERT_EQ(RunCli("solve " + (dir / "p.json").string() + " --epsilon 1e-6 -o " +
                   (dir / "s.json").string()),
            0);
  auto o = nlohmann::json::parse(Slurp(dir / "o.json"));
  auto s = nlohmann::json::parse(Slurp(dir / "s.json"));
  EXPECT_EQ(o["method"], "brute");
  EXPECT_NEAR(o["optimum"].get<double>(), s["objective"].get<double>(),
              1e-6 * std::max(1.0, std::abs(o["optimum"].get<double>())));
}

TEST(CliTest, BenchAndProfile) {
  fs::path dir = FreshDir("iasolve_cli_bench");
  {
    std::ofstream m(dir / "matrix.json");
    m << R"({"instances": [{"generator": "csink", "n": 5, "m": 2, "seed": 1, "repetitions": 2}],
             "solvers": [{"id": "best", "epsilon": 0.0001},
                         {"id": "depth", "epsilon": 0.0001, "node_selection": "depthFirst"}]})";
  }
  ASSERT_EQ(RunCli("bench " + (dir / "matrix.json").string() + " --jobs 2 -o " +
                   (dir / "a.csv").string()),
            0);
  ASSERT_EQ(RunCli("bench " + (dir / "matrix.json").string() + " -o " + (dir / "b.csv").string()),
            0);
  EXPECT_EQ(CsvWithoutTiming(Slurp(dir / "a.csv")), CsvWithoutTiming(Slurp(dir / "b.csv")));
  EXPECT_EQ(ReadCsv(dir / "a.csv").size(), 4u);
  ASSERT_EQ(RunCli("profile " + (dir / "a.csv").string() + " -o " + (dir / "p.svg").string()), 0);
  EXPECT_NE(Slurp(dir / "p.svg").find("data-solver=\"depth\""), std::string::npos);
}

TEST(CliTest, SolveIsDeterministic) {
  fs::path dir = FreshDir("iasolve_cli_determinism");
  ASSERT_EQ(RunCli("generate pt --m 3 --n 6 --seed 2 -o " + (dir / "p.json").string()), 0);
  for (const char* name : {"a", "b"}) {
    ASSERT_EQ(RunCli("solve " + (dir / "p.json").string() + " --epsilon 1e-4 -o " +
                     (dir / (std::string(name) + ".json")).string() + " --trace " +
                     (dir / (std::string(name) + ".trace.json")).string()),
              0);
  }
  EXPECT_EQ(WithoutTiming(Slurp(dir / "a.json")), WithoutTiming(Slurp(dir / "b.json")));
  EXPECT_EQ(WithoutTiming(Slurp(dir / "a.trace.json")),
            WithoutTiming(Slurp(dir / "b.trace.json")));
}

}  // namespace
}  // namespace iasolve
