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
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "iasolve/inner_approx.h"
#include "test_util.h"

namespace iasolve {
namespace {

ConcaveTerm Scalar(FamilyParams f) { return {{0}, ConcaveFunction(std::move(f))}; }

TEST(BreakpointSetTest, AddDetectsDuplicates) {
  BreakpointSet set(0, Scalar(PowerScaled{-1.0, 1.5}));
  const std::vector<double> a = {1.0};
  const std::vector<double> b = {7.0};
  const std::vector<double> near_a = {1.0 + 1e-12};
  EXPECT_EQ(set.Add(a, 1), AddResult::kAdded);
  EXPECT_EQ(set.Add(b, 2), AddResult::kAdded);
  EXPECT_EQ(set.Add(near_a, 3), AddResult::kDuplicate);
  EXPECT_EQ(set.size(), 2);
  EXPECT_EQ(set.created_at(1), 2);
  EXPECT_DOUBLE_EQ(set.value(0), -1.0);
  EXPECT_NEAR(set.value(1), -18.52, 0.01);
}

TEST(BreakpointSetTest, WorkedExampleInterpolation) {
  BreakpointSet set(0, Scalar(PowerScaled{-1.0, 1.5}));
  set.Add(std::vector<double>{1.0});
  set.Add(std::vector<double>{7.0});
  auto hat = set.Evaluate(std::vector<double>{2.0});
  ASSERT_TRUE(hat.has_value());
  const double g7 = -std::pow(7.0, 1.5);
  EXPECT_NEAR(hat->value, (5.0 * -1.0 + 1.0 * g7) / 6.0, 1e-12);
  EXPECT_NEAR(hat->weights[0], 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(hat->weights[1], 1.0 / 6.0, 1e-12);
  EXPECT_FALSE(set.Evaluate(std::vector<double>{8.0}).has_value());
}

TEST(BreakpointSetTest, InnerApproximationUnderestimates) {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ConcaveTerm term = {{0}, testing::RandomConcave(g, 1.0)};
    BreakpointSet set(0, term);
    set.Add(std::vector<double>{1.0});
    set.Add(std::vector<double>{6.0});
    for (int k = 0; k < 4; ++k) set.Add(std::vector<double>{1.0 + 5.0 * u(g)});
    for (int j = 0; j < set.size(); ++j) {
      auto hat = set.Evaluate(set.point(j));
      ASSERT_TRUE(hat.has_value());
      EXPECT_NEAR(hat->value, set.value(j), 1e-9 * std::max(1.0, std::abs(set.value(j))));
    }
    for (int k = 0; k < 20; ++k) {
      double x = 1.0 + 5.0 * u(g);
      auto hat = set.Evaluate(std::vector<double>{x});
      ASSERT_TRUE(hat.has_value());
      double phi = term.function.Value(x);
      EXPECT_LE(hat->value, phi + 1e-9 * std::max(1.0, std::abs(phi)));
    }
  }
}

TEST(BreakpointSetTest, PhiHatLipschitzBoundedByPhi) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    ConcaveTerm term = {{0}, testing::RandomConcave(g, 1.0)};
    BreakpointSet set(0, term);
    for (int k = 0; k < 6; ++k) set.Add(std::vector<double>{1.0 + 5.0 * u(g)});
    const std::vector<double> lo = {1.0};
    const std::vector<double> hi = {6.0};
    LipschitzEstimate k = LipschitzConstant(term, lo, hi);
    EXPECT_LE(set.MaxAdjacentSlope(), k.constant * (1.0 + 1e-9));
  }
}

TEST(BreakpointSetTest, JointTermMatchesSeparableEnvelope) {
  // With corner samples of a box, the weights LP of a separable term equals
  // the sum of the one-dimensional interpolations.
  ConcaveTerm term = {{0, 1}, ConcaveFunction(SqrtScaled{3.0})};
  const std::vector<double> lo = {0.0, 1.0};
  const std::vector<double> hi = {4.0, 9.0};
  BreakpointSet set = InitialSet(0, term, lo, hi, InitMode::kCorners);
  ASSERT_EQ(set.size(), 4);
  auto hat = set.Evaluate(std::vector<double>{1.0, 5.0});
  ASSERT_TRUE(hat.has_value());
  double expected = 3.0 * (0.75 * 0.0 + 0.25 * 2.0) + 3.0 * (0.5 * 1.0 + 0.5 * 3.0);
  EXPECT_NEAR(hat->value, expected, 1e-9);
  double sum = 0.0;
  for (double w : hat->weights) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(InitialSetTest, CornerAndSimplexSizes) {
  ConcaveTerm term = {{0, 1, 2}, ConcaveFunction(SqrtScaled{1.0})};
  const std::vector<double> lo = {0.0, 0.0, 0.0};
  const std::vector<double> hi = {1.0, 2.0, 3.0};
  EXPECT_EQ(InitialSet(0, term, lo, hi, InitMode::kCorners).size(), 8);
  BreakpointSet simplex = InitialSet(0, term, lo, hi, InitMode::kSimplex);
  ASSERT_EQ(simplex.size(), 4);
  EXPECT_DOUBLE_EQ(simplex.point(2)[1], 6.0);  // k e_2 scaled to the box
  EXPECT_EQ(InitialSet(0, term, lo, hi, InitMode::kAuto).size(), 8);
}

TEST(SolveWeightsLpTest, OutsideHullIsNullopt) {
  const std::vector<double> pts = {0.0, 0.0, 1.0, 0.0, 0.0, 1.0};
  const std::vector<double> vals = {0.0, 1.0, 1.0};
  EXPECT_FALSE(SolveWeightsLp(pts, vals, 2, std::vector<double>{1.0, 1.0}).has_value());
  auto in = SolveWeightsLp(pts, vals, 2, std::vector<double>{0.25, 0.25});
  ASSERT_TRUE(in.has_value());
  EXPECT_NEAR(in->value, 0.5, 1e-12);
}

TEST(LipschitzTest, ClosedFormAndSingular) {
  const std::vector<double> lo = {1.0};
  const std::vector<double> hi = {7.0};
  LipschitzEstimate k = LipschitzConstant(Scalar(PowerScaled{-5.0, 1.5}), lo, hi);
  EXPECT_EQ(k.method, LipschitzMethod::kClosedForm);
  EXPECT_NEAR(k.constant, 7.5 * std::sqrt(7.0), 1e-9);
  const std::vector<double> zero = {0.0};
  LipschitzEstimate s = LipschitzConstant(Scalar(SqrtScaled{1.0}), zero, hi);
  EXPECT_TRUE(s.singular);
  EXPECT_TRUE(std::isfinite(s.constant));
  EXPECT_GT(s.constant, 0.0);
}

TEST(BigMTest, WorkedExampleValues) {
  ConcaveTerm term = Scalar(PowerScaled{-5.0, 1.5});
  const std::vector<double> lo = {1.0};
  const std::vector<double> hi = {7.0};
  LipschitzEstimate k = LipschitzConstant(term, lo, hi);
  BigMValues m = BigM(term, lo, hi, k);
  EXPECT_DOUBLE_EQ(m.phi_max, -5.0);
  EXPECT_NEAR(m.phi_min, -5.0 * std::pow(7.0, 1.5), 1e-9);
  EXPECT_DOUBLE_EQ(m.delta_z_max, 6.0);
  EXPECT_DOUBLE_EQ(m.m2, 1.0);
  EXPECT_NEAR(m.m1, k.constant * 6.0 + m.phi_max - m.phi_min, 1e-9);
}

}  // namespace
}  // namespace iasolve
