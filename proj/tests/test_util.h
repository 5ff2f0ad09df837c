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

#ifndef IASOLVE_TESTS_TEST_UTIL_H_
#define IASOLVE_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "iasolve/model.h"

namespace iasolve::testing {

// Worked example: min -5 x1^1.5 + 8 x1 - 30 x2 over the
// integers in [1, 7]^2 with three rows.
inline Problem WorkedExample() {
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

struct RandomOptions {
  int min_vars = 2;
  int max_vars = 3;
  int max_rows = 2;
  int max_width = 4;             // upper - lower for every variable
  bool continuous = false;       // allow continuous variables
  bool joint_term = false;       // add one two-variable term
};

// A random concave scalar function that is evaluable on [lower, upper].
inline ConcaveFunction RandomConcave(std::mt19937_64& g, double lower) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in = [&](double a, double b) { return a + (b - a) * u(g); };
  int family = static_cast<int>(g() % 4);
  if (family == 1 && lower <= 0.0) family = 0;
  switch (family) {
    case 0:
      return ConcaveFunction(Poly4{in(-0.2, 0.0), in(-1.0, 0.0), in(-5.0, -0.1), in(-5.0, 5.0)});
    case 1:
      return ConcaveFunction(LogLinear{in(0.1, 5.0), in(-5.0, 5.0)});
    case 2:
      return ConcaveFunction(SqrtScaled{in(1.0, 10.0)});
    default:
      return ConcaveFunction(PowerScaled{in(-3.0, -0.5), in(1.2, 2.5)});
  }
}

// Small feasible problem with one scalar term per variable and <= rows that
// hold at a random point of the box.
inline Problem RandomSmallProblem(uint64_t seed, const RandomOptions& opts = {}) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in = [&](double a, double b) { return a + (b - a) * u(g); };
  Problem p;
  p.name = "random_" + std::to_string(seed);
  const int n = opts.min_vars + static_cast<int>(g() % (opts.max_vars - opts.min_vars + 1));
  std::vector<double> witness(n);
  for (int j = 0; j < n; ++j) {
    bool continuous = opts.continuous && g() % 2 == 0;
    double lower = static_cast<double>(g() % 2);
    double upper = lower + 1.0 + static_cast<double>(g() % opts.max_width);
    p.variables.push_back({"v" + std::to_string(j), lower, upper,
                           continuous ? VarKind::kContinuous : VarKind::kInteger});
    witness[j] = continuous ? in(lower, upper) : lower + static_cast<double>(g() % static_cast<int>(upper - lower + 1));
    p.objective_linear.terms.emplace_back(j, std::round(in(-5.0, 5.0) * 100.0) / 100.0);
  }
  int first_scalar = 0;
  if (opts.joint_term && n >= 2) {
    p.concave_terms.push_back({{0, 1}, RandomConcave(g, std::min(p.variables[0].lower,
                                                                 p.variables[1].lower))});
    first_scalar = 2;
  }
  for (int j = first_scalar; j < n; ++j) {
    p.concave_terms.push_back({{j}, RandomConcave(g, p.variables[j].lower)});
  }
  const int rows = 1 + static_cast<int>(g() % opts.max_rows);
  for (int i = 0; i < rows; ++i) {
    LinearConstraint c;
    double at_witness = 0.0;
    for (int j = 0; j < n; ++j) {
      double a = std::round(in(-5.0, 5.0) * 10.0) / 10.0;
      if (a == 0.0) continue;
      c.expr.terms.emplace_back(j, a);
      at_witness += a * witness[j];
    }
    c.sense = Sense::kLessEqual;
    c.rhs = std::round((at_witness + in(0.0, 3.0)) * 10.0) / 10.0 + 0.1;
    p.linear_constraints.push_back(std::move(c));
  }
  return p;
}

inline bool RelClose(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace iasolve::testing

#endif  // IASOLVE_TESTS_TEST_UTIL_H_
