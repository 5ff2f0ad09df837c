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

#include <vector>

#include "benchmark/benchmark.h"
#include "iasolve/branch_and_bound.h"
#include "iasolve/generators.h"
#include "iasolve/ia_solver.h"
#include "iasolve/oracle.h"

namespace iasolve {
namespace {

Problem WorkedExample() {
  Problem p;
  p.name = "worked_example";
  p.variables = {{"x1", 1.0, 7.0, VarKind::kInteger}, {"x2", 1.0, 7.0, VarKind::kInteger}};
  p.objective_linear.terms = {{0, 8.0}, {1, -30.0}};
  p.concave_terms.push_back({{0}, ConcaveFunction(PowerScaled{-5.0, 1.5})});
  p.linear_constraints = {
      {{{{0, -9.0}, {1, 5.0}}, 0.0}, Sense::kLessEqual, 9.0},
      {{{{0, 1.0}, {1, -6.0}}, 0.0}, Sense::kLessEqual, 6.0},
      {{{{0, 3.0}, {1, 1.0}}, 0.0}, Sense::kLessEqual, 9.0},
  };
  return p;
}

void BM_SolveWorkedExample(benchmark::State& state) {
  Problem p = WorkedExample();
  IAParams params;
  params.epsilon = 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(Solve(p, params).ub);
}
BENCHMARK(BM_SolveWorkedExample);

void BM_SolveCsink(benchmark::State& state) {
  Problem p = GenCsink({.n = static_cast<int>(state.range(0)), .m = 3, .seed = 1});
  IAParams params;
  params.epsilon = 1e-4;
  for (auto _ : state) benchmark::DoNotOptimize(Solve(p, params).ub);
}
BENCHMARK(BM_SolveCsink)->Arg(8)->Arg(16)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_SolvePtMultiple(benchmark::State& state) {
  Problem p = GenPt({.m = 5, .n = 25, .rho = 0.6, .seed = 1});
  IAParams params;
  params.epsilon = 0.01;
  for (auto _ : state) benchmark::DoNotOptimize(Solve(p, params).ub);
}
BENCHMARK(BM_SolvePtMultiple)->Unit(benchmark::kMillisecond);

// The LP relaxation of a multiple-sourcing instance through branch and bound.
void BM_TransportationLp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Problem p = GenPt({.m = 5, .n = n, .rho = 0.6, .seed = 1});
  std::vector<PwlPoints> linear;
  for (const ConcaveTerm& t : p.concave_terms) {
    (void)t;
    linear.push_back({{0.0, 0.0}, {kPtCapacity, 0.0}});
  }
  MilpModel model = EncodePwl(p, linear);
  SolveParams params;
  params.relative_gap = 1e-9;
  for (auto _ : state) benchmark::DoNotOptimize(SolveMilp(model, params).objective);
}
BENCHMARK(BM_TransportationLp)->Arg(10)->Arg(25)->Unit(benchmark::kMillisecond);

void BM_BruteForceCsink(benchmark::State& state) {
  Problem p = GenCsink({.n = 7, .m = 3, .seed = 2});
  for (auto _ : state) benchmark::DoNotOptimize(BruteForceInteger(p).optimum);
}
BENCHMARK(BM_BruteForceCsink)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace iasolve

BENCHMARK_MAIN();
