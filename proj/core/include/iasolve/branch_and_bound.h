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

#ifndef IASOLVE_BRANCH_AND_BOUND_H_
#define IASOLVE_BRANCH_AND_BOUND_H_

#include <optional>
#include <vector>

#include "iasolve/milp_model.h"

namespace iasolve {

// Result of turning singleton rows into variable bounds.
struct PresolveResult {
  MilpModel model;              // same variables, singleton rows removed
  bool infeasible = false;
  int rows_removed = 0;
};

// Tightens bounds from rows with a single nonzero coefficient and drops
// them. Integral bounds are rounded inward. Empty rows are checked and
// dropped.
PresolveResult PresolveSingletons(const MilpModel& model);

// LP-based branch-and-bound. Node relaxations are re-optimized by the dual
// simplex from the previous node's basis. Branches on the most fractional
// integral variable (ties to the lowest index); best-bound selection breaks
// ties by depth (deeper first) and then creation order.
MilpSolution SolveMilp(const MilpModel& model, const SolveParams& params);

}  // namespace iasolve

#endif  // IASOLVE_BRANCH_AND_BOUND_H_
