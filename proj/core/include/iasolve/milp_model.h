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

#ifndef IASOLVE_MILP_MODEL_H_
#define IASOLVE_MILP_MODEL_H_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "iasolve/model.h"

namespace iasolve {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// A mixed-integer linear program: minimize objective subject to rows and
// bounds. Variables and rows reuse the problem-level types.
struct MilpModel {
  std::string name;
  std::vector<Variable> variables;
  LinearExpr objective;
  std::vector<LinearConstraint> constraints;
  std::vector<std::string> constraint_names;  // parallel to constraints

  int num_variables() const { return static_cast<int>(variables.size()); }
  int num_constraints() const { return static_cast<int>(constraints.size()); }
  int num_integral() const;

  int AddVariable(std::string var_name, double lower, double upper,
                  VarKind kind = VarKind::kContinuous);
  int AddConstraint(LinearExpr expr, Sense sense, double rhs,
                    std::string row_name = "");

  // Empty when the model is structurally sound; otherwise the reasons.
  std::vector<std::string> Check() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  // Row duals and structural reduced costs of the final basis.
  std::vector<double> row_duals;
  std::vector<double> reduced_costs;
  int64_t iterations = 0;
  int basic_structurals = 0;
  int basic_slacks = 0;
};

enum class MilpStatus { kOptimal, kInfeasible, kTimeLimit, kGapLimit };

std::string_view MilpStatusName(MilpStatus status);

struct MilpSolution {
  MilpStatus status = MilpStatus::kInfeasible;
  bool has_incumbent = false;
  std::vector<double> x;
  double objective = kInfinity;
  double best_bound = -kInfinity;
  int64_t nodes_explored = 0;
  int64_t lp_iterations = 0;
  double wall_time_sec = 0.0;
};

enum class NodeSelection { kBestBound, kDepthFirst };
enum class BranchRule { kMostFractional };

std::string_view NodeSelectionName(NodeSelection sel);
std::optional<NodeSelection> ParseNodeSelection(std::string_view name);

struct SolveParams {
  double time_limit_sec = 7200.0;
  double relative_gap = 1e-6;
  NodeSelection node_selection = NodeSelection::kBestBound;
  BranchRule branch_rule = BranchRule::kMostFractional;
  uint64_t seed = 0;
};

// Solver backends share this interface; the built-in branch-and-bound is the
// default implementation.
class MilpBackend {
 public:
  virtual ~MilpBackend() = default;
  virtual std::string_view name() const = 0;
  virtual MilpSolution Solve(const MilpModel& model, const SolveParams& params) = 0;
};

std::unique_ptr<MilpBackend> MakeBuiltinBackend();

}  // namespace iasolve

#endif  // IASOLVE_MILP_MODEL_H_
