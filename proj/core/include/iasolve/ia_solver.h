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

#ifndef IASOLVE_IA_SOLVER_H_
#define IASOLVE_IA_SOLVER_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iasolve/inner_approx.h"
#include "iasolve/milp_model.h"
#include "iasolve/model.h"

namespace iasolve {

enum class IAStatus { kOptimal, kGapReached, kTimeLimit, kIterLimit, kInfeasible };

std::string_view IAStatusName(IAStatus status);
std::optional<IAStatus> ParseIAStatus(std::string_view name);

struct IAParams {
  double epsilon = 0.01;  // relative gap (UB - LB) / max(|LB|, 1e-10)
  double max_wall_time_sec = 7200.0;
  int max_iterations = 10000;
  InitMode init_mode = InitMode::kAuto;
  SolveParams milp_params = {.relative_gap = 1e-9};
  std::string backend = "builtin";        // or "lp-export"
  std::filesystem::path export_dir = ".";  // for lp-export
  // Breakpoints added to each objective term's initial set, by term index.
  std::vector<std::vector<std::vector<double>>> extra_points;
};

struct IterationRecord {
  int iteration = 0;                    // 1-based
  double master_objective = 0.0;        // lower bound from this master
  std::vector<double> z;                // master solution in original variables
  std::optional<double> ub_candidate;   // f(z) + phi(z) when z is feasible
  double ub_best = 0.0;                 // best upper bound so far (inf if none)
  std::vector<int> added;               // per objective term: 1 added, 0 duplicate
  std::vector<int> breakpoints;         // set sizes used by this master
  std::vector<double> m1;               // per objective term
  std::vector<double> lipschitz;        // per objective term, K of phi-hat
  int master_rows = 0;
  int master_cols = 0;
  int master_binaries = 0;
  int64_t milp_nodes = 0;
  double wall_time_sec = 0.0;           // since the start of the solve
};

struct IAResult {
  IAStatus status = IAStatus::kIterLimit;
  bool has_incumbent = false;
  std::vector<double> incumbent;
  double ub = 0.0;  // +inf without incumbent
  double lb = 0.0;
  double gap = 0.0;
  std::vector<IterationRecord> iterations;
  std::vector<BreakpointSet> final_sets;  // objective terms
  double linear_lipschitz = 0.0;          // K1 = max|c| sqrt(n)
  std::vector<std::string> warnings;
  double wall_time_sec = 0.0;
};

// Iterative inner approximation. Throws std::invalid_argument when the
// problem does not validate, and std::runtime_error when the backend fails.
IAResult Solve(const Problem& problem, const IAParams& params = {});

// Trace properties: monotone lower bounds (1e-9 relative slack), a repeated
// master solution only on the last iteration, the Lipschitz gap bound between
// consecutive iterates, and LB <= v* <= UB when the optimum is known.
std::vector<std::string> CheckTrace(const IAResult& result,
                                    std::optional<double> known_optimum = std::nullopt);

// JSON trace: result summary plus one record per iteration and the final
// breakpoints. Timing fields are the only nondeterministic content.
std::string SerializeTrace(const IAResult& result);
IAResult ParseTrace(std::string_view json_text);

}  // namespace iasolve

#endif  // IASOLVE_IA_SOLVER_H_
