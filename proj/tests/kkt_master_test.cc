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
#include <vector>

#include "gtest/gtest.h"
#include "iasolve/branch_and_bound.h"
#include "iasolve/inner_approx.h"
#include "iasolve/kkt_master.h"
#include "iasolve/oracle.h"
#include "test_util.h"

namespace iasolve {
namespace {

struct Sets {
  std::vector<BreakpointSet> sets;
  std::vector<BigMValues> big_m;
};

Sets BuildSets(const Problem& p, const std::vector<std::vector<double>>& extra = {}) {
  Sets out;
  for (size_t t = 0; t < p.concave_terms.size(); ++t) {
    const ConcaveTerm& term = p.concave_terms[t];
    auto [lo, hi] = TermBounds(p, term);
    out.sets.push_back(InitialSet(static_cast<int>(t), term, lo, hi, InitMode::kCorners));
    if (t < extra.size()) {
      for (double z : extra[t]) out.sets.back().Add(std::vector<double>{z});
    }
    out.big_m.push_back(BigM(term, lo, hi, LipschitzConstant(term, lo, hi)));
  }
  return out;
}

SolveParams Exact() {
  SolveParams params;
  params.relative_gap = 1e-9;
  return params;
}

TEST(KktMasterTest, WorkedExampleFirstMaster) {
  Problem p = testing::WorkedExample();
  Sets s = BuildSets(p);
  MasterModel master = BuildMaster(p, s.sets, s.big_m);
  EXPECT_TRUE(master.model.Check().empty());
  ASSERT_EQ(master.map.terms.size(), 1u);
  EXPECT_EQ(master.map.terms[0].mu.size(), 2u);
  EXPECT_EQ(master.map.num_original, 2);
  MilpSolution sol = SolveMilp(master.model, Exact());
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -93.6, 0.01);
  MasterSolution ms = ExtractSolution(master, s.sets, sol);
  EXPECT_NEAR(ms.x[0], 2.0, 1e-6);
  EXPECT_NEAR(ms.x[1], 3.0, 1e-6);
  EXPECT_NEAR(ms.lower_bound, sol.objective, 1e-9);
}

TEST(KktMasterTest, WorkedExampleSecondMaster) {
  Problem p = testing::WorkedExample();
  Sets s = BuildSets(p, {{2.0}});
  MilpSolution sol = SolveMilp(BuildMaster(p, s.sets, s.big_m).model, Exact());
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  EXPECT_NEAR(sol.objective, -88.14, 0.02);
}

TEST(KktMasterTest, AgreesWithDirectPiecewiseEncoding) {
  for (uint64_t seed = 1; seed <= 60; ++seed) {
    Problem p = testing::RandomSmallProblem(seed);
    Sets s = BuildSets(p, {{p.variables[0].lower + 1.0}});
    MilpSolution kkt = SolveMilp(BuildMaster(p, s.sets, s.big_m).model, Exact());
    MilpSolution pwl = SolveMilp(PwlMilpEncode(p, s.sets), Exact());
    ASSERT_EQ(kkt.status, pwl.status) << "seed " << seed;
    if (kkt.status != MilpStatus::kOptimal) continue;
    EXPECT_TRUE(testing::RelClose(kkt.objective, pwl.objective, 1e-6))
        << "seed " << seed << ": " << kkt.objective << " vs " << pwl.objective;
  }
}

TEST(KktMasterTest, BigMIsNotBinding) {
  for (uint64_t seed = 100; seed < 140; ++seed) {
    Problem p = testing::RandomSmallProblem(seed);
    Sets s = BuildSets(p, {{p.variables[0].lower + 1.0}});
    MasterModel tight = BuildMaster(p, s.sets, s.big_m);
    MasterModel loose = BuildMaster(p, s.sets, s.big_m, {}, {}, {.m1_override = 1e7});
    MilpSolution a = SolveMilp(tight.model, Exact());
    MilpSolution b = SolveMilp(loose.model, Exact());
    ASSERT_EQ(a.status, b.status);
    if (a.status != MilpStatus::kOptimal) continue;
    EXPECT_TRUE(testing::RelClose(a.objective, b.objective, 1e-6)) << "seed " << seed;
    for (const TermBlock& block : tight.map.terms) {
      for (size_t j = 0; j < block.mu.size(); ++j) {
        EXPECT_LE(a.x[block.gamma[j]], block.m1 + 1e-6);
        EXPECT_LE(a.x[block.mu[j]], 1.0 + 1e-9);
      }
    }
  }
}

// Large complementarity constants once made warm-started nodes look
// infeasible; the optimum must not depend on M1.
TEST(KktMasterTest, LargeBigMKeepsTheOptimum) {
  Problem p = testing::RandomSmallProblem(333);
  Sets s = BuildSets(p, {{p.variables[0].lower + 1.0}});
  MilpSolution reference = SolveMilp(BuildMaster(p, s.sets, s.big_m).model, Exact());
  ASSERT_EQ(reference.status, MilpStatus::kOptimal);
  for (double m1 : {1e3, 1e5, 1e6, 1e7, 1e8}) {
    MilpSolution sol = SolveMilp(BuildMaster(p, s.sets, s.big_m, {}, {}, {.m1_override = m1}).model,
                                 Exact());
    ASSERT_EQ(sol.status, MilpStatus::kOptimal) << m1;
    EXPECT_TRUE(testing::RelClose(sol.objective, reference.objective, 1e-6)) << m1;
  }
}

TEST(KktMasterTest, ConcaveConstraintBlock) {
  // min t subject to t >= sqrt(x).
  Problem p;
  p.variables = {{"x", 0.0, 4.0, VarKind::kInteger}, {"t", -10.0, 10.0, VarKind::kContinuous}};
  p.objective_linear.terms = {{1, 1.0}};
  p.concave_constraints.push_back({1, {{0}, ConcaveFunction(SqrtScaled{1.0})}, 50.0});
  std::vector<BreakpointSet> csets;
  std::vector<BigMValues> cbig;
  const std::vector<double> lo = {0.0};
  const std::vector<double> hi = {4.0};
  csets.push_back(InitialSet(0, p.concave_constraints[0].term, lo, hi, InitMode::kCorners));
  BigMValues b = BigM(p.concave_constraints[0].term, lo, hi,
                      LipschitzConstant(p.concave_constraints[0].term, lo, hi));
  b.m1 = 50.0;
  cbig.push_back(b);
  MasterModel master = BuildMaster(p, {}, {}, csets, cbig);
  ASSERT_EQ(master.map.constraints.size(), 1u);
  EXPECT_EQ(master.map.constraints[0].zeta, 1);
  MilpSolution sol = SolveMilp(master.model, Exact());
  ASSERT_EQ(sol.status, MilpStatus::kOptimal);
  // t >= phi-hat(x) with phi-hat the chord from (0,0) to (4,2): minimum at x = 0.
  EXPECT_NEAR(sol.objective, 0.0, 1e-9);
}

TEST(KktMasterTest, SizeMismatchThrows) {
  Problem p = testing::WorkedExample();
  Sets s = BuildSets(p);
  EXPECT_THROW(BuildMaster(p, {}, s.big_m), std::invalid_argument);
}

}  // namespace
}  // namespace iasolve
