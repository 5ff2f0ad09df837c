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

#ifndef IASOLVE_ORACLE_H_
#define IASOLVE_ORACLE_H_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iasolve/inner_approx.h"
#include "iasolve/milp_model.h"
#include "iasolve/model.h"

namespace iasolve {

inline constexpr int64_t kOracleSizeLimit = 10'000'000;

// The enumeration would exceed the size guard.
class OracleSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

enum class OracleStatus { kOptimal, kInfeasible };

struct OracleResult {
  OracleStatus status = OracleStatus::kInfeasible;
  double optimum = 0.0;
  std::vector<std::vector<double>> argmins;
  std::string method;
  // Exact methods report lo = hi = optimum.
  double lo = 0.0;
  double hi = 0.0;
};

// Objective evaluated without the model library: a separate implementation
// of every function family, used to cross-check EvalObjective.
double OracleObjective(const Problem& problem, std::span<const double> x);

// Enumerates the integer box. All variables must be integral; rows are
// checked with 1e-9 slack. Throws OracleSizeError above `limit` points.
OracleResult BruteForceInteger(const Problem& problem, int64_t limit = kOracleSizeLimit);

// Single-sourcing production-transportation: every destination-to-source
// map, with y_i the demand assigned to source i.
OracleResult EnumerateAssignments(const Problem& problem, int64_t limit = kOracleSizeLimit);

// Bounds the optimum of a problem with scalar terms on continuous variables:
// lo replaces each term by its G-point secant interpolation, hi by the
// minimum of G tangents. optimum is the best true objective at either argmin.
OracleResult SandwichContinuous(const Problem& problem, int grid_points);

// One scalar term as a piecewise-linear function through (point, value).
using PwlPoints = std::vector<std::pair<double, double>>;

// Mixed-integer model of min f(x) + sum_t pwl_t(x_t) with the logarithmic
// SOS2 convex-combination encoding. Only objective terms with k = 1.
MilpModel EncodePwl(const Problem& problem, const std::vector<PwlPoints>& terms);

// EncodePwl with the breakpoints and values of the given sets.
struct PwlMinimum {
  bool feasible = false;
  double value = 0.0;  // incumbent objective
  double bound = 0.0;  // proven lower bound, within the gap of value
  std::vector<double> x;
  int64_t nodes = 0;
};

// Global minimum of the linear objective plus one concave piecewise-linear
// function per objective term, by branch-and-bound on breakpoint intervals
// with chord relaxations. Throws std::invalid_argument when a list is not
// concave or does not cover its variable's bounds.
PwlMinimum MinimizeConcavePwl(const Problem& problem, const std::vector<PwlPoints>& terms,
                              double relative_gap = 1e-9);

MilpModel PwlMilpEncode(const Problem& problem, const std::vector<BreakpointSet>& sets);

}  // namespace iasolve

#endif  // IASOLVE_ORACLE_H_
