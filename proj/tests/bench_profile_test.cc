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

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "iasolve/bench.h"
#include "iasolve/profile.h"

namespace iasolve {
namespace {

BenchRecord Rec(const std::string& instance, const std::string& solver, double t,
                const std::string& status = "optimal") {
  BenchRecord r;
  r.instance = instance;
  r.solver = solver;
  r.time_s = t;
  r.status = status;
  return r;
}

double At(const ProfileCurve& c, double tau) {
  for (const auto& [t, p] : c.points) {
    if (std::abs(t - tau) < 1e-12) return p;
  }
  ADD_FAILURE() << "tau " << tau << " not on grid";
  return NAN;
}

TEST(BenchCsvTest, HeaderAndRows) {
  std::vector<BenchRecord> records = {Rec("a", "s1", 1.5), Rec("a", "s2", INFINITY, "timeLimit")};
  std::ostringstream out;
  EmitCsv(records, out);
  std::string text = out.str();
  std::istringstream lines(text);
  std::string line;
  int count = 0;
  std::getline(lines, line);
  EXPECT_EQ(line, kCsvHeader);
  while (std::getline(lines, line)) ++count;
  EXPECT_EQ(count, 2);
  std::istringstream in(text);
  std::vector<BenchRecord> back = ReadCsv(in);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].time_s, 1.5);
  EXPECT_TRUE(std::isinf(back[1].time_s));
  EXPECT_EQ(back[1].status, "timeLimit");
}

TEST(BenchCsvTest, MalformedRowThrows) {
  std::istringstream in(std::string(kCsvHeader) + "\na,s1,1.0\n");
  EXPECT_ANY_THROW(ReadCsv(in));
}

TEST(ProfileTest, TauGrid) {
  std::vector<double> grid = ProfileTauGrid();
  ASSERT_EQ(grid.size(), 61u);
  EXPECT_EQ(grid.front(), 0.0);
  EXPECT_DOUBLE_EQ(grid.back(), 6.0);
}

TEST(ProfileTest, TwoSolverRatios) {
  std::vector<BenchRecord> records = {Rec("i1", "s1", 2.0), Rec("i1", "s2", 4.0)};
  auto ratios = PerformanceRatios(records, {"s1", "s2"});
  EXPECT_EQ(ratios["i1"]["s1"], 1.0);
  EXPECT_EQ(ratios["i1"]["s2"], 2.0);
  auto curves = PerformanceProfile(records, {"s1", "s2"});
  ASSERT_EQ(curves.size(), 2u);
  EXPECT_EQ(At(curves[0], 0.0), 1.0);
  EXPECT_EQ(At(curves[1], 0.0), 0.0);
  EXPECT_EQ(At(curves[1], 1.0), 1.0);
}

TEST(ProfileTest, IdenticalTimesGiveFullCurves) {
  std::vector<BenchRecord> records;
  for (const char* i : {"a", "b", "c"}) {
    for (const char* s : {"x", "y", "z"}) records.push_back(Rec(i, s, 3.0));
  }
  for (const ProfileCurve& c : PerformanceProfile(records, {"x", "y", "z"})) {
    for (const auto& [tau, p] : c.points) EXPECT_EQ(p, 1.0);
  }
}

TEST(ProfileTest, FailuresNeverCount) {
  std::vector<BenchRecord> records = {Rec("i", "s1", 1.0), Rec("i", "s2", 0.5, "timeLimit")};
  auto curves = PerformanceProfile(records, {"s1", "s2"});
  EXPECT_EQ(At(curves[0], 0.0), 1.0);
  EXPECT_EQ(At(curves[1], 6.0), 0.0);
}

TEST(ProfileTest, SevenInstanceFraction) {
  std::vector<BenchRecord> records;
  for (int i = 0; i < 7; ++i) {
    std::string name = "i" + std::to_string(i);
    records.push_back(Rec(name, "IA", i < 5 ? 1.0 : 3.0));
    records.push_back(Rec(name, "other", 2.0));
  }
  auto curves = PerformanceProfile(records, {"IA", "other"});
  EXPECT_DOUBLE_EQ(At(curves[0], 0.0), 5.0 / 7.0);
  EXPECT_DOUBLE_EQ(At(curves[1], 0.0), 2.0 / 7.0);
  EXPECT_DOUBLE_EQ(At(curves[0], 0.5), 5.0 / 7.0);  // 1.5 > 2^0.5
  EXPECT_DOUBLE_EQ(At(curves[0], 0.6), 1.0);
}

TEST(ProfileTest, InvalidInputsThrow) {
  std::vector<BenchRecord> records = {Rec("i1", "s1", 1.0), Rec("i1", "s2", 1.0),
                                      Rec("i2", "s1", 1.0)};
  EXPECT_THROW(PerformanceRatios(records, {"s1", "s2"}), std::invalid_argument);
  EXPECT_THROW(PerformanceRatios(records, {"s1"}), std::invalid_argument);
  records.push_back(Rec("i1", "s1", 2.0));
  EXPECT_THROW(PerformanceRatios(records, {"s1", "s2"}), std::invalid_argument);
}

TEST(ProfileTest, CsvReingestionReproducesCurves) {
  std::vector<BenchRecord> records = {Rec("a", "s1", 0.25), Rec("a", "s2", 0.5),
                                      Rec("b", "s1", 1.0 / 3.0), Rec("b", "s2", 0.1)};
  std::ostringstream out;
  EmitCsv(records, out);
  std::istringstream in(out.str());
  std::vector<BenchRecord> back = ReadCsv(in);
  auto a = PerformanceProfile(records, {"s1", "s2"});
  auto b = PerformanceProfile(back, {"s1", "s2"});
  ASSERT_EQ(a.size(), b.size());
  for (size_t s = 0; s < a.size(); ++s) EXPECT_EQ(a[s].points, b[s].points);
  EXPECT_EQ(SolverIds(back), (std::vector<std::string>{"s1", "s2"}));
}

TEST(ProfileTest, SvgOutput) {
  std::ostringstream empty;
  EmitSvg({}, empty);
  EXPECT_NE(empty.str().find("<svg"), std::string::npos);
  EXPECT_NE(empty.str().find("</svg>"), std::string::npos);
  EXPECT_EQ(empty.str().find("<polyline"), std::string::npos);

  std::vector<BenchRecord> records = {Rec("i1", "s1", 2.0), Rec("i1", "s2", 4.0)};
  std::ostringstream svg;
  EmitSvg(PerformanceProfile(records, {"s1", "s2"}), svg);
  std::string text = svg.str();
  EXPECT_NE(text.find("data-solver=\"s1\""), std::string::npos);
  EXPECT_NE(text.find("data-solver=\"s2\""), std::string::npos);
  EXPECT_NE(text.find("tau"), std::string::npos);
}

TEST(BenchRunTest, MatrixParsing) {
  BenchMatrix m = ParseBenchMatrix(R"({
    "instances": [{"generator": "csink", "n": 4, "m": 2, "family": "cubic", "seed": 3,
                   "repetitions": 2},
                  {"generator": "pt", "m": 2, "n": 3, "rho": 0.5, "sourcing": "single"}],
    "solvers": [{"id": "ia", "epsilon": 0.001}, {"id": "ia_dfs", "node_selection": "depthFirst"}]
  })");
  ASSERT_EQ(m.instances.size(), 2u);
  EXPECT_EQ(m.instances[0].repetitions, 2);
  EXPECT_EQ(std::get<CsinkConfig>(m.instances[0].config).family, CsinkFamily::kCubic);
  EXPECT_EQ(std::get<PtConfig>(m.instances[1].config).sourcing, Sourcing::kSingle);
  ASSERT_EQ(m.solvers.size(), 2u);
  EXPECT_EQ(m.solvers[0].params.epsilon, 0.001);
  EXPECT_THROW(ParseBenchMatrix(R"({"instances": [], "solvers": [{"id": "a"}, {"id": "a"}]})"),
               std::invalid_argument);
  EXPECT_THROW(ParseBenchMatrix(R"({"instances": [{"generator": "tsp"}], "solvers": []})"),
               std::invalid_argument);
}

TEST(BenchRunTest, RunsEveryPair) {
  BenchMatrix m;
  m.instances.push_back({CsinkConfig{.n = 4, .m = 2, .seed = 5}, 2});
  m.instances.push_back({CsinkConfig{.n = 4, .m = 2, .seed = 9}, 0});
  IAParams fast;
  fast.epsilon = 1e-4;
  m.solvers = {{"a", fast}, {"b", fast}};
  std::vector<BenchRecord> records = RunBench(m, 2);
  ASSERT_EQ(records.size(), 4u);
  for (const BenchRecord& r : records) {
    EXPECT_TRUE(r.solved()) << r.status;
    EXPECT_EQ(r.instance_hash.size(), 16u);
  }
  std::vector<BenchRecord> again = RunBench(m, 1);
  ASSERT_EQ(again.size(), records.size());
  for (size_t k = 0; k < records.size(); ++k) {
    EXPECT_EQ(again[k].instance, records[k].instance);
    EXPECT_EQ(again[k].solver, records[k].solver);
    EXPECT_EQ(again[k].ub, records[k].ub);
    EXPECT_EQ(again[k].instance_hash, records[k].instance_hash);
  }
  EXPECT_EQ(HashHex("abc"), HashHex("abc"));
  EXPECT_NE(HashHex("abc"), HashHex("abd"));
}

}  // namespace
}  // namespace iasolve
