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

#ifndef IASOLVE_KKT_MASTER_H_
#define IASOLVE_KKT_MASTER_H_

#include <optional>
#include <string>
#include <vector>

#include "iasolve/inner_approx.h"
#include "iasolve/milp_model.h"
#include "iasolve/model.h"

namespace iasolve {

// Column indices of one term's block inside the master model.
struct TermBlock {
  int source_index = -1;        // index into concave_terms or concave_constraints
  bool is_constraint = false;
  std::vector<int> x;           // original variables of the term, in term order
  std::vector<int> mu;          // convex-combination weights, one per breakpoint
  std::vector<int> u;           // complementarity binaries
  std::vector<int> gamma;       // dual slacks of the weight bounds
  int alpha = -1;               // dual of the weight-sum row
  std::vector<int> beta;        // duals of the linking rows
  int zeta = -1;                // epigraph variable; the bound variable for constraints
  double m1 = 0.0;              // complementarity constant actually used
};

struct MasterMap {
  int num_original = 0;         // master columns [0, num_original) are x
  std::vector<TermBlock> terms;
  std::vector<TermBlock> constraints;
};

struct MasterModel {
  MilpModel model;
  MasterMap map;
};

struct MasterOptions {
  // Replaces every objective-term M1 (used to check that M1 is not binding).
  std::optional<double> m1_override;
};

// One block per concave term: sum mu = 1, sum mu z = x, sum mu phi(z) <= zeta,
// stationarity phi(z_j) - alpha - beta.z_j + gamma_j = 0 and the linearized
// complementarity gamma_j <= M1 u_j, mu_j <= 1 - u_j. Concave constraints
// get the same block with the bound variable in place of zeta. Objective is
// f(x) + sum zeta. Throws std::invalid_argument on size mismatches.
MasterModel BuildMaster(const Problem& problem,
                        const std::vector<BreakpointSet>& term_sets,
                        const std::vector<BigMValues>& term_big_m,
                        const std::vector<BreakpointSet>& constraint_sets = {},
                        const std::vector<BigMValues>& constraint_big_m = {},
                        const MasterOptions& options = {});

struct MasterSolution {
  std::vector<double> x;                  // original variables
  double lower_bound = 0.0;               // master objective
  std::vector<double> phi_hat;            // zeta per objective term
  std::vector<std::vector<double>> mu;    // weights per objective term
};

// Throws std::logic_error when sum mu z differs from x by more than 1e-6.
MasterSolution ExtractSolution(const MasterModel& master,
                               const std::vector<BreakpointSet>& term_sets,
                               const MilpSolution& solution);

}  // namespace iasolve

#endif  // IASOLVE_KKT_MASTER_H_
