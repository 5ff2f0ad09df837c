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
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "iasolve/branch_and_bound.h"
#include "iasolve/lp_export.h"
#include "iasolve/milp_model.h"
#include "iasolve/simplex.h"

namespace iasolve {
namespace {

MilpModel RandomLp(std::mt19937& g) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  MilpModel m;
  const int n = 2 + g() % 6;
  const int rows = 1 + g() % 6;
  for (int j = 0; j < n; ++j) {
    m.AddVariable("v" + std::to_string(j), -static_cast<double>(g() % 4), 1.0 + g() % 5);
    m.objective.terms.emplace_back(j, u(g));
  }
  for (int i = 0; i < rows; ++i) {
    LinearExpr e;
    for (int j = 0; j < n; ++j) {
      if (g() % 3) e.terms.emplace_back(j, u(g));
    }
    m.AddConstraint(std::move(e), static_cast<Sense>(g() % 3), u(g));
  }
  return m;
}

// Objective of the dual at the reported multipliers.
double DualObjective(const MilpModel& m, const LpSolution& s) {
  double dual = 0.0;
  for (int j = 0; j < m.num_variables(); ++j) {
    double d = s.reduced_costs[j];
    dual += d > 0 ? d * m.variables[j].lower : d * m.variables[j].upper;
  }
  for (int i = 0; i < m.num_constraints(); ++i) {
    double y = s.row_duals[i];
    const LinearConstraint& c = m.constraints[i];
    if (y > 1e-12) dual += y * c.rhs;
    if (y < -1e-12) dual += y * c.rhs;
    if (y > 1e-12) EXPECT_NE(c.sense, Sense::kLessEqual);
    if (y < -1e-12) EXPECT_NE(c.sense, Sense::kGreaterEqual);
  }
  return dual;
}

TEST(SimplexTest, SmallLps) {
  MilpModel m;
  int x = m.AddVariable("x", 0.0, 1.0);
  int y = m.AddVariable("y", 0.0, 1.0);
  m.objective.terms = {{x, -1.0}, {y, -2.0}};
  m.AddConstraint({{{x, 1.0}, {y, 1.0}}, 0.0}, Sense::kLessEqual, 1.5);
  LpSolution s = SolveLp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -2.5, 1e-12);
  EXPECT_NEAR(s.x[0], 0.5, 1e-12);

  MilpModel infeasible;
  int z = infeasible.AddVariable("z", 0.0, 1.0);
  infeasible.AddConstraint({{{z, 1.0}}, 0.0}, Sense::kGreaterEqual, 2.0);
  EXPECT_EQ(SolveLp(infeasible).status, LpStatus::kInfeasible);

  MilpModel unbounded;
  int w = unbounded.AddVariable("w", 0.0, kInfinity);
  unbounded.objective.terms = {{w, -1.0}};
  EXPECT_EQ(SolveLp(unbounded).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, StrongDualityOnRandomLps) {
  std::mt19937 g(1);
  int optimal = 0;
  for (int t = 0; t < 2000; ++t) {
    MilpModel m = RandomLp(g);
    LpSolution s = SolveLp(m);
    if (s.status != LpStatus::kOptimal) continue;
    ++optimal;
    double viol = 0.0;
    for (const LinearConstraint& c : m.constraints) viol = std::max(viol, c.Violation(s.x));
    EXPECT_LE(viol, 1e-7) << "instance " << t;
    EXPECT_NEAR(DualObjective(m, s), s.objective, 1e-7) << "instance " << t;
  }
  EXPECT_GT(optimal, 500);
}

TEST(SimplexTest, DualReoptimizationMatchesColdSolve) {
  std::mt19937 g(11);
  for (int t = 0; t < 1000; ++t) {
    MilpModel m = RandomLp(g);
    LpSolution s = SolveLp(m);
    if (s.status != LpStatus::kOptimal) continue;
    SimplexEngine engine(m);
    ASSERT_EQ(engine.SolvePrimal(), SimplexEngine::Result::kOptimal);
    int j = g() % m.num_variables();
    double new_upper = std::floor(s.x[j]);
    if (new_upper < m.variables[j].lower) continue;
    engine.SetBounds(j, m.variables[j].lower, new_upper);
    SimplexEngine::Result warm = engine.SolveDual();
    MilpModel cold_model = m;
    cold_model.variables[j].upper = new_upper;
    LpSolution cold = SolveLp(cold_model);
    ASSERT_EQ(warm == SimplexEngine::Result::kOptimal, cold.status == LpStatus::kOptimal)
        << "instance " << t;
    if (cold.status == LpStatus::kOptimal) {
      EXPECT_NEAR(engine.Objective(), cold.objective, 1e-7) << "instance " << t;
    }
  }
}

TEST(SimplexTest, FreeVariablesAndEqualities) {
  MilpModel m;
  int x = m.AddVariable("x", -kInfinity, kInfinity);
  int y = m.AddVariable("y", -kInfinity, kInfinity);
  m.objective.terms = {{x, 1.0}, {y, 1.0}};
  m.AddConstraint({{{x, 1.0}, {y, -1.0}}, 0.0}, Sense::kEqual, 2.0);
  m.AddConstraint({{{x, 1.0}}, 0.0}, Sense::kGreaterEqual, -1.0);
  m.AddConstraint({{{y, 1.0}}, 0.0}, Sense::kGreaterEqual, -4.0);
  LpSolution s = SolveLp(m);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -1.0 + -3.0, 1e-9);
}

// Exhaustive enumeration over the integer box is the reference.
TEST(BranchAndBoundTest, MatchesEnumerationOnRandomMilps) {
  std::mt19937 g(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  int feasible = 0;
  for (int t = 0; t < 500; ++t) {
    MilpModel m;
    const int n = 1 + g() % 5;
    const int rows = 1 + g() % 5;
    for (int j = 0; j < n; ++j) {
      m.AddVariable("v" + std::to_string(j), 0.0, 5.0, VarKind::kInteger);
      m.objective.terms.emplace_back(j, u(g));
    }
    for (int i = 0; i < rows; ++i) {
      LinearExpr e;
      for (int j = 0; j < n; ++j) {
        if (g() % 3) e.terms.emplace_back(j, u(g));
      }
      m.AddConstraint(std::move(e), static_cast<Sense>(g() % 2), 3.0 * u(g));
    }
    double best = kInfinity;
    std::vector<double> x(n, 0.0);
    int total = 1;
    for (int j = 0; j < n; ++j) total *= 6;
    for (int code = 0; code < total; ++code) {
      int c = code;
      for (int j = 0; j < n; ++j) {
        x[j] = c % 6;
        c /= 6;
      }
      bool ok = true;
      for (const LinearConstraint& row : m.constraints) ok = ok && row.Violation(x) <= 1e-9;
      if (ok) best = std::min(best, m.objective.Evaluate(x));
    }
    for (NodeSelection sel : {NodeSelection::kBestBound, NodeSelection::kDepthFirst}) {
      SolveParams params;
      params.node_selection = sel;
      MilpSolution s = SolveMilp(m, params);
      if (std::isinf(best)) {
        EXPECT_EQ(s.status, MilpStatus::kInfeasible) << "instance " << t;
      } else {
        ASSERT_EQ(s.status, MilpStatus::kOptimal) << "instance " << t;
        EXPECT_NEAR(s.objective, best, 1e-6) << "instance " << t;
        EXPECT_LE(s.best_bound, s.objective + 1e-9);
      }
    }
    feasible += !std::isinf(best);
  }
  EXPECT_GT(feasible, 100);
}

TEST(BranchAndBoundTest, BinaryKnapsack) {
  const std::vector<double> profit = {10, 13, 7, 8, 4};
  const std::vector<double> weight = {5, 7, 4, 4, 2};
  MilpModel m;
  LinearExpr cap;
  for (size_t j = 0; j < profit.size(); ++j) {
    int v = m.AddVariable("x" + std::to_string(j), 0.0, 1.0, VarKind::kBinary);
    m.objective.terms.emplace_back(v, -profit[j]);
    cap.terms.emplace_back(v, weight[j]);
  }
  m.AddConstraint(std::move(cap), Sense::kLessEqual, 12.0);
  MilpSolution s = SolveMilp(m, {});
  ASSERT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_NEAR(s.objective, -23.0, 1e-9);
}

TEST(BranchAndBoundTest, PresolveTurnsSingletonsIntoBounds) {
  MilpModel m;
  int x = m.AddVariable("x", 0.0, 10.0, VarKind::kInteger);
  int y = m.AddVariable("y", 0.0, 10.0);
  m.AddConstraint({{{x, 2.0}}, 0.0}, Sense::kLessEqual, 7.0);
  m.AddConstraint({{{y, -1.0}}, 0.0}, Sense::kLessEqual, -2.5);
  m.AddConstraint({{{x, 1.0}, {y, 1.0}}, 0.0}, Sense::kLessEqual, 9.0);
  PresolveResult r = PresolveSingletons(m);
  EXPECT_FALSE(r.infeasible);
  EXPECT_EQ(r.rows_removed, 2);
  EXPECT_EQ(r.model.num_constraints(), 1);
  EXPECT_DOUBLE_EQ(r.model.variables[x].upper, 3.0);
  EXPECT_DOUBLE_EQ(r.model.variables[y].lower, 2.5);

  MilpModel bad;
  int z = bad.AddVariable("z", 0.0, 1.0, VarKind::kInteger);
  bad.AddConstraint({{{z, 4.0}}, 0.0}, Sense::kEqual, 2.0);
  EXPECT_TRUE(PresolveSingletons(bad).infeasible);
  EXPECT_EQ(SolveMilp(bad, {}).status, MilpStatus::kInfeasible);
}

TEST(BranchAndBoundTest, BackendInterface) {
  auto backend = MakeBuiltinBackend();
  EXPECT_EQ(backend->name(), "builtin");
  MilpModel m;
  int x = m.AddVariable("x", 0.0, 3.0, VarKind::kInteger);
  m.objective.terms = {{x, -1.0}};
  m.AddConstraint({{{x, 2.0}}, 0.0}, Sense::kLessEqual, 5.0);
  MilpSolution s = backend->Solve(m, {});
  EXPECT_EQ(s.status, MilpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.x[0], 2.0);
}

TEST(LpExportTest, WritesAllSections) {
  MilpModel m;
  m.name = "demo";
  int a = m.AddVariable("a[1]", 0.0, 4.0, VarKind::kInteger);
  int b = m.AddVariable("b", 0.0, 1.0, VarKind::kBinary);
  int c = m.AddVariable("c", -kInfinity, kInfinity);
  m.objective.terms = {{a, 1.0}, {b, -2.5}, {c, 1.0}};
  m.AddConstraint({{{a, 1.0}, {b, 1.0}}, 0.0}, Sense::kLessEqual, 3.0, "cap");
  m.AddConstraint({{{c, 1.0}, {a, -1.0}}, 0.0}, Sense::kGreaterEqual, -2.0, "cap");
  m.AddConstraint({{{c, 1.0}}, 0.0}, Sense::kEqual, 0.5);
  std::string lp = ExportLpString(m);
  for (const char* section : {"Minimize", "Subject To", "Bounds", "Generals", "Binaries", "End"}) {
    EXPECT_NE(lp.find(section), std::string::npos) << section;
  }
  EXPECT_NE(lp.find("a_1_"), std::string::npos);
  EXPECT_NE(lp.find("cap:"), std::string::npos);
  EXPECT_NE(lp.find("cap_1:"), std::string::npos);
  EXPECT_NE(lp.find("c free"), std::string::npos);
  EXPECT_NE(lp.find("- 2.5 b"), std::string::npos);
  EXPECT_EQ(ExportLpString(m), lp);
}

TEST(LpExportTest, SanitizeNames) {
  EXPECT_EQ(SanitizeLpName("mu_1_2"), "mu_1_2");
  EXPECT_EQ(SanitizeLpName("x[1]"), "x_1_");
  EXPECT_EQ(SanitizeLpName("1x"), "v1x");
}

TEST(LpExportTest, ExportBackendWritesFiles) {
  auto dir = std::filesystem::temp_directory_path() / "iasolve_lp_export_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  auto backend = MakeBackend("lp-export", dir);
  ASSERT_NE(backend, nullptr);
  EXPECT_EQ(MakeBackend("cplex"), nullptr);
  MilpModel m;
  int x = m.AddVariable("x", 0.0, 3.0, VarKind::kInteger);
  m.objective.terms = {{x, 1.0}};
  backend->Solve(m, {});
  backend->Solve(m, {});
  EXPECT_TRUE(std::filesystem::exists(dir / "master_1.lp"));
  EXPECT_TRUE(std::filesystem::exists(dir / "master_2.lp"));
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace iasolve
