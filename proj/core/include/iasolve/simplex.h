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

#ifndef IASOLVE_SIMPLEX_H_
#define IASOLVE_SIMPLEX_H_

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "iasolve/milp_model.h"

namespace iasolve {

// Raised when the simplex makes no progress within its iteration cap.
class SimplexStalled : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bounded-variable revised simplex over the LP relaxation of a MilpModel.
//
// Every row i gets a logical column s_i = a_i x with bounds taken from the
// row sense, so the system is [A | -I] (x, s) = 0 with box bounds on every
// column. The basis inverse is kept explicitly (column-major, dense) and
// refreshed by rank-one updates; refactorization exploits the logical
// columns so only the structural block is inverted.
//
// The engine keeps its basis between calls. Branch-and-bound changes bounds
// through SetBounds() and re-optimizes with the dual simplex, which stays
// dual feasible under bound changes.
class SimplexEngine {
 public:
  struct Options {
    double primal_tol = 1e-9;
    double dual_tol = 1e-9;
    double pivot_tol = 1e-9;
    int refactor_interval = 100;
    int64_t max_iterations = 1'000'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
  };

  enum class Result {
    kOptimal,
    kInfeasible,
    kUnbounded,
    kCutoff,     // dual simplex objective passed the cutoff
    kTimeLimit,
  };

  explicit SimplexEngine(const MilpModel& model);
  SimplexEngine(const MilpModel& model, Options options);

  int num_structurals() const { return n_; }
  int num_rows() const { return m_; }

  // Structural bounds (structural columns are never scaled).
  double lower(int j) const { return lo_[j]; }
  double upper(int j) const { return hi_[j]; }
  void SetBounds(int j, double lower, double upper);

  // Primal simplex: phase 1 on the sum of infeasibilities, then phase 2.
  // Falls back to Bland's rule after 10*(rows+cols) iterations without
  // progress.
  Result SolvePrimal();

  // Dual simplex from the current basis. Repairs dual infeasibility by bound
  // flips where possible and otherwise defers to SolvePrimal().
  Result SolveDual(double cutoff = kInfinity);

  double Objective() const;
  std::vector<double> StructuralValues() const;
  std::vector<double> RowDuals() const;
  std::vector<double> ReducedCosts() const;  // structurals only
  int64_t iterations() const { return iterations_; }
  int BasicStructurals() const;

  // Restores the all-logical basis.
  void ResetBasis();

 private:
  enum class VarState : uint8_t { kBasic, kAtLower, kAtUpper, kFree };

  double ColumnDot(int j, const std::vector<double>& v) const;
  void Ftran(int j, std::vector<double>& out) const;
  void BinvRow(int r, std::vector<double>& out) const;
  void Refactor();
  void ComputePrimal();
  void ComputeDuals(const std::vector<double>& cost, std::vector<double>& d) const;
  void PlaceNonbasic(int j);
  void Pivot(int r, int q, const std::vector<double>& alpha);
  bool CheckLimits();
  bool RepairDualInfeasibility();
  double Infeasibility(int j) const;

  int n_ = 0;  // structurals
  int m_ = 0;  // rows
  Options options_;
  // Sparse structural columns (CSC) after row scaling.
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> value_;
  std::vector<double> row_scale_;
  std::vector<double> cost_;  // size n_ + m_
  double objective_constant_ = 0.0;
  // Bounds in scaled units (logical columns are scaled by row_scale_).
  std::vector<double> lo_;
  std::vector<double> hi_;
  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<int> head_;         // basic variable of each basis position
  std::vector<int> position_;     // basis position of a variable, -1 if nonbasic
  std::vector<double> binv_;      // column-major m x m
  std::vector<double> d_;         // reduced costs, size n_ + m_
  int pivots_since_refactor_ = 0;
  bool primal_dirty_ = false;
  int64_t iterations_ = 0;
  int64_t call_start_ = 0;  // iterations_ when the current solve began
};

// Solves the continuous relaxation with the primal simplex.
LpSolution SolveLp(const MilpModel& model);

}  // namespace iasolve

#endif  // IASOLVE_SIMPLEX_H_
