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

#include "iasolve/milp_model.h"

#include <cmath>
#include <set>

namespace iasolve {

int MilpModel::num_integral() const {
  int count = 0;
  for (const Variable& v : variables) count += v.is_integral() ? 1 : 0;
  return count;
}

int MilpModel::AddVariable(std::string var_name, double lower, double upper,
                           VarKind kind) {
  variables.push_back({std::move(var_name), lower, upper, kind});
  return num_variables() - 1;
}

int MilpModel::AddConstraint(LinearExpr expr, Sense sense, double rhs,
                             std::string row_name) {
  if (row_name.empty()) row_name = "c" + std::to_string(constraints.size());
  constraints.push_back({std::move(expr), sense, rhs});
  constraint_names.push_back(std::move(row_name));
  return num_constraints() - 1;
}

std::vector<std::string> MilpModel::Check() const {
  std::vector<std::string> out;
  const int n = num_variables();
  for (int j = 0; j < n; ++j) {
    const Variable& v = variables[j];
    if (std::isnan(v.lower) || std::isnan(v.upper) || v.lower > v.upper) {
      out.push_back("variable " + v.name + " has invalid bounds");
    }
    if (v.is_integral() && (!std::isfinite(v.lower) || !std::isfinite(v.upper))) {
      out.push_back("integral variable " + v.name + " needs finite bounds");
    }
  }
  auto check_expr = [&](const LinearExpr& e, const std::string& where) {
    for (const auto& [idx, coef] : e.terms) {
      if (idx < 0 || idx >= n) out.push_back(where + ": bad variable index");
      if (!std::isfinite(coef)) out.push_back(where + ": non-finite coefficient");
    }
  };
  check_expr(objective, "objective");
  for (int i = 0; i < num_constraints(); ++i) {
    check_expr(constraints[i].expr, "row " + std::to_string(i));
    if (!std::isfinite(constraints[i].rhs)) {
      out.push_back("row " + std::to_string(i) + ": non-finite rhs");
    }
  }
  return out;
}

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

std::string_view MilpStatusName(MilpStatus status) {
  switch (status) {
    case MilpStatus::kOptimal:
      return "optimal";
    case MilpStatus::kInfeasible:
      return "infeasible";
    case MilpStatus::kTimeLimit:
      return "timeLimit";
    case MilpStatus::kGapLimit:
      return "gapLimit";
  }
  return "unknown";
}

std::string_view NodeSelectionName(NodeSelection sel) {
  return sel == NodeSelection::kBestBound ? "bestBound" : "depthFirst";
}

std::optional<NodeSelection> ParseNodeSelection(std::string_view name) {
  if (name == "bestBound" || name == "best-bound") return NodeSelection::kBestBound;
  if (name == "depthFirst" || name == "depth-first") return NodeSelection::kDepthFirst;
  return std::nullopt;
}

}  // namespace iasolve
