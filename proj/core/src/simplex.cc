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

#include "iasolve/simplex.h"

#include <algorithm>
#include <cmath>
#include <map>

namespace iasolve {
namespace {

constexpr double kSingularTol = 1e-11;

double PowerOfTwoScale(double max_abs) {
  if (max_abs <= 0.0 || !std::isfinite(max_abs)) return 1.0;
  return std::ldexp(1.0, -static_cast<int>(std::lround(std::log2(max_abs))));
}

}  // namespace

SimplexEngine::SimplexEngine(const MilpModel& model)
    : SimplexEngine(model, Options{}) {}

SimplexEngine::SimplexEngine(const MilpModel& model, Options options)
    : n_(model.num_variables()), m_(model.num_constraints()), options_(options) {
  const int total = n_ + m_;
  // Merge duplicate entries row by row and pick a power-of-two row scale.
  std::vector<std::vector<std::pair<int, double>>> rows(m_);
  std::vector<double> row_lo(m_);
  std::vector<double> row_hi(m_);
  row_scale_.assign(m_, 1.0);
  for (int i = 0; i < m_; ++i) {
    const LinearConstraint& c = model.constraints[i];
    std::map<int, double> merged;
    for (const auto& [idx, coef] : c.expr.terms) merged[idx] += coef;
    double max_abs = 0.0;
    for (const auto& [idx, coef] : merged) {
      if (coef != 0.0) {
        rows[i].emplace_back(idx, coef);
        max_abs = std::max(max_abs, std::abs(coef));
      }
    }
    row_scale_[i] = PowerOfTwoScale(max_abs);
    double rhs = c.rhs - c.expr.constant;
    row_lo[i] = c.sense == Sense::kLessEqual ? -kInfinity : rhs;
    row_hi[i] = c.sense == Sense::kGreaterEqual ? kInfinity : rhs;
  }
  std::vector<int> count(n_ + 1, 0);
  for (const auto& row : rows) {
    for (const auto& [idx, coef] : row) ++count[idx + 1];
  }
  col_start_.assign(n_ + 1, 0);
  for (int j = 0; j < n_; ++j) col_start_[j + 1] = col_start_[j] + count[j + 1];
  row_index_.resize(col_start_[n_]);
  value_.resize(col_start_[n_]);
  std::vector<int> fill(col_start_.begin(), col_start_.end() - 1);
  for (int i = 0; i < m_; ++i) {
    for (const auto& [idx, coef] : rows[i]) {
      row_index_[fill[idx]] = i;
      value_[fill[idx]] = coef * row_scale_[i];
      ++fill[idx];
    }
  }
  cost_.assign(total, 0.0);
  for (const auto& [idx, coef] : model.objective.terms) cost_[idx] += coef;
  objective_constant_ = model.objective.constant;
  lo_.resize(total);
  hi_.resize(total);
  for (int j = 0; j < n_; ++j) {
    lo_[j] = model.variables[j].lower;
    hi_[j] = model.variables[j].upper;
  }
  for (int i = 0; i < m_; ++i) {
    lo_[n_ + i] = row_lo[i] * row_scale_[i];
    hi_[n_ + i] = row_hi[i] * row_scale_[i];
  }
  x_.assign(total, 0.0);
  state_.assign(total, VarState::kAtLower);
  d_.assign(total, 0.0);
  ResetBasis();
}

void SimplexEngine::ResetBasis() {
  const int total = n_ + m_;
  head_.resize(m_);
  position_.assign(total, -1);
  for (int i = 0; i < m_; ++i) {
    head_[i] = n_ + i;
    position_[n_ + i] = i;
    state_[n_ + i] = VarState::kBasic;
  }
  for (int j = 0; j < n_; ++j) {
    // Slack basis has zero duals, so the reduced cost is the cost itself.
    d_[j] = cost_[j];
    PlaceNonbasic(j);
  }
  binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) binv_[static_cast<size_t>(i) * m_ + i] = -1.0;
  pivots_since_refactor_ = 0;
  ComputePrimal();
  ComputeDuals(cost_, d_);
}

void SimplexEngine::PlaceNonbasic(int j) {
  bool lo_finite = std::isfinite(lo_[j]);
  bool hi_finite = std::isfinite(hi_[j]);
  if (lo_finite && hi_finite) {
    state_[j] = d_[j] >= 0.0 ? VarState::kAtLower : VarState::kAtUpper;
  } else if (lo_finite) {
    state_[j] = VarState::kAtLower;
  } else if (hi_finite) {
    state_[j] = VarState::kAtUpper;
  } else {
    state_[j] = VarState::kFree;
  }
  switch (state_[j]) {
    case VarState::kAtLower:
      x_[j] = lo_[j];
      break;
    case VarState::kAtUpper:
      x_[j] = hi_[j];
      break;
    default:
      x_[j] = 0.0;
  }
}

void SimplexEngine::SetBounds(int j, double lower, double upper) {
  lo_[j] = lower;
  hi_[j] = upper;
  if (state_[j] == VarState::kBasic) return;
  if (state_[j] == VarState::kAtLower && !std::isfinite(lower)) {
    PlaceNonbasic(j);
  } else if (state_[j] == VarState::kAtUpper && !std::isfinite(upper)) {
    PlaceNonbasic(j);
  } else if (state_[j] == VarState::kAtLower) {
    x_[j] = lower;
  } else if (state_[j] == VarState::kAtUpper) {
    x_[j] = upper;
  } else {
    PlaceNonbasic(j);
  }
  primal_dirty_ = true;
}

double SimplexEngine::ColumnDot(int j, const std::vector<double>& v) const {
  if (j >= n_) return -v[j - n_];
  double sum = 0.0;
  for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) sum += value_[k] * v[row_index_[k]];
  return sum;
}

void SimplexEngine::Ftran(int j, std::vector<double>& out) const {
  out.assign(m_, 0.0);
  auto axpy = [&](int c, double a) {
    const double* col = binv_.data() + static_cast<size_t>(c) * m_;
    for (int r = 0; r < m_; ++r) out[r] += a * col[r];
  };
  if (j >= n_) {
    axpy(j - n_, -1.0);
    return;
  }
  for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) axpy(row_index_[k], value_[k]);
}

void SimplexEngine::BinvRow(int r, std::vector<double>& out) const {
  out.resize(m_);
  for (int c = 0; c < m_; ++c) out[c] = binv_[static_cast<size_t>(c) * m_ + r];
}

void SimplexEngine::Refactor() {
  for (int attempt = 0; attempt <= m_; ++attempt) {
    // Rows whose logical is basic, and the basic structurals.
    std::vector<char> logical_row(m_, 0);
    std::vector<int> structural_pos;
    for (int p = 0; p < m_; ++p) {
      int j = head_[p];
      if (j >= n_) {
        logical_row[j - n_] = 1;
      } else {
        structural_pos.push_back(p);
      }
    }
    const int t = static_cast<int>(structural_pos.size());
    std::vector<int> other_rows;
    std::vector<int> row_slot(m_, -1);
    for (int i = 0; i < m_; ++i) {
      if (!logical_row[i]) {
        row_slot[i] = static_cast<int>(other_rows.size());
        other_rows.push_back(i);
      }
    }
    // C = A[other_rows, basic structurals], inverted by Gauss-Jordan.
    std::vector<double> c_mat(static_cast<size_t>(t) * t, 0.0);
    std::vector<double> inv(static_cast<size_t>(t) * t, 0.0);
    for (int b = 0; b < t; ++b) {
      int j = head_[structural_pos[b]];
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        int slot = row_slot[row_index_[k]];
        if (slot >= 0) c_mat[static_cast<size_t>(slot) * t + b] = value_[k];
      }
    }
    for (int a = 0; a < t; ++a) inv[static_cast<size_t>(a) * t + a] = 1.0;
    std::vector<int> perm(t);
    for (int a = 0; a < t; ++a) perm[a] = a;
    std::vector<int> dropped;
    int next = 0;
    for (int b = 0; b < t; ++b) {
      int best = -1;
      double best_abs = kSingularTol;
      for (int a = next; a < t; ++a) {
        double v = std::abs(c_mat[static_cast<size_t>(perm[a]) * t + b]);
        if (v > best_abs) {
          best_abs = v;
          best = a;
        }
      }
      if (best < 0) {
        dropped.push_back(b);
        continue;
      }
      std::swap(perm[next], perm[best]);
      const int pr = perm[next];
      double* prow = c_mat.data() + static_cast<size_t>(pr) * t;
      double* pinv = inv.data() + static_cast<size_t>(pr) * t;
      double scale = 1.0 / prow[b];
      for (int c = 0; c < t; ++c) {
        prow[c] *= scale;
        pinv[c] *= scale;
      }
      for (int a = 0; a < t; ++a) {
        if (a == pr) continue;
        double* row = c_mat.data() + static_cast<size_t>(a) * t;
        double f = row[b];
        if (f == 0.0) continue;
        double* irow = inv.data() + static_cast<size_t>(a) * t;
        for (int c = 0; c < t; ++c) {
          if (prow[c] != 0.0) row[c] -= f * prow[c];
          if (pinv[c] != 0.0) irow[c] -= f * pinv[c];
        }
        row[b] = 0.0;
      }
      ++next;
    }
    if (!dropped.empty()) {
      // Swap each dependent structural for the logical of an unused row.
      for (size_t k = 0; k < dropped.size(); ++k) {
        int p = structural_pos[dropped[k]];
        int j = head_[p];
        int row = other_rows[perm[next + static_cast<int>(k)]];
        position_[j] = -1;
        PlaceNonbasic(j);
        head_[p] = n_ + row;
        position_[n_ + row] = p;
        state_[n_ + row] = VarState::kBasic;
      }
      continue;
    }
    // Assemble B^-1 (rows = basis positions, columns = constraint rows).
    std::fill(binv_.begin(), binv_.end(), 0.0);
    auto set = [&](int pos, int row, double v) {
      binv_[static_cast<size_t>(row) * m_ + pos] = v;
    };
    for (int b = 0; b < t; ++b) {
      // Row b of C^-1 is row perm[b] of the eliminated identity.
      const double* src = inv.data() + static_cast<size_t>(perm[b]) * t;
      for (int a = 0; a < t; ++a) {
        if (src[a] != 0.0) set(structural_pos[b], other_rows[a], src[a]);
      }
    }
    for (int p = 0; p < m_; ++p) {
      int j = head_[p];
      if (j < n_) continue;
      int s = j - n_;
      set(p, s, -1.0);
    }
    // Logical rows: D * C^-1 where D = A[logical rows, basic structurals].
    for (int b = 0; b < t; ++b) {
      int j = head_[structural_pos[b]];
      const double* src = inv.data() + static_cast<size_t>(perm[b]) * t;
      for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
        int s = row_index_[k];
        if (!logical_row[s]) continue;
        int pos = position_[n_ + s];
        double f = value_[k];
        for (int a = 0; a < t; ++a) {
          if (src[a] != 0.0) binv_[static_cast<size_t>(other_rows[a]) * m_ + pos] += f * src[a];
        }
      }
    }
    pivots_since_refactor_ = 0;
    ComputePrimal();
    ComputeDuals(cost_, d_);
    return;
  }
  throw SimplexStalled("basis repair failed");
}

void SimplexEngine::ComputePrimal() {
  std::vector<double> rhs(m_, 0.0);
  for (int j = 0; j < n_; ++j) {
    if (state_[j] == VarState::kBasic || x_[j] == 0.0) continue;
    for (int k = col_start_[j]; k < col_start_[j + 1]; ++k) {
      rhs[row_index_[k]] -= value_[k] * x_[j];
    }
  }
  for (int i = 0; i < m_; ++i) {
    int j = n_ + i;
    if (state_[j] != VarState::kBasic) rhs[i] += x_[j];
  }
  for (int p = 0; p < m_; ++p) x_[head_[p]] = 0.0;
  std::vector<double> xb(m_, 0.0);
  for (int c = 0; c < m_; ++c) {
    if (rhs[c] == 0.0) continue;
    const double* col = binv_.data() + static_cast<size_t>(c) * m_;
    for (int r = 0; r < m_; ++r) xb[r] += col[r] * rhs[c];
  }
  for (int p = 0; p < m_; ++p) x_[head_[p]] = xb[p];
  primal_dirty_ = false;
}

void SimplexEngine::ComputeDuals(const std::vector<double>& cost,
                                 std::vector<double>& d) const {
  std::vector<double> cb(m_);
  for (int p = 0; p < m_; ++p) cb[p] = cost[head_[p]];
  std::vector<double> y(m_, 0.0);
  for (int c = 0; c < m_; ++c) {
    const double* col = binv_.data() + static_cast<size_t>(c) * m_;
    double sum = 0.0;
    for (int r = 0; r < m_; ++r) sum += cb[r] * col[r];
    y[c] = sum;
  }
  d.assign(n_ + m_, 0.0);
  for (int j = 0; j < n_ + m_; ++j) {
    if (state_[j] == VarState::kBasic) continue;
    d[j] = cost[j] - ColumnDot(j, y);
  }
}

void SimplexEngine::Pivot(int r, int q, const std::vector<double>& alpha) {
  const double piv = alpha[r];
  for (int c = 0; c < m_; ++c) {
    double* col = binv_.data() + static_cast<size_t>(c) * m_;
    double v = col[r];
    if (v == 0.0) continue;
    v /= piv;
    for (int i = 0; i < m_; ++i) {
      if (alpha[i] != 0.0) col[i] -= alpha[i] * v;
    }
    col[r] = v;
  }
  int leaving = head_[r];
  position_[leaving] = -1;
  head_[r] = q;
  position_[q] = r;
  state_[q] = VarState::kBasic;
  ++pivots_since_refactor_;
}

bool SimplexEngine::CheckLimits() {
  if (iterations_ - call_start_ >= options_.max_iterations) {
    throw SimplexStalled("stalled: simplex iteration cap reached");
  }
  if (options_.deadline && (iterations_ & 63) == 0 &&
      std::chrono::steady_clock::now() > *options_.deadline) {
    return true;
  }
  return false;
}

double SimplexEngine::Infeasibility(int j) const {
  return std::max({0.0, lo_[j] - x_[j], x_[j] - hi_[j]});
}

bool SimplexEngine::RepairDualInfeasibility() {
  bool flipped = false;
  for (int j = 0; j < n_ + m_; ++j) {
    VarState s = state_[j];
    if (s == VarState::kBasic) continue;
    if (lo_[j] == hi_[j]) continue;  // fixed columns never price
    if (s == VarState::kAtLower && d_[j] < -options_.dual_tol) {
      if (!std::isfinite(hi_[j])) return false;
      state_[j] = VarState::kAtUpper;
      x_[j] = hi_[j];
      flipped = true;
    } else if (s == VarState::kAtUpper && d_[j] > options_.dual_tol) {
      if (!std::isfinite(lo_[j])) return false;
      state_[j] = VarState::kAtLower;
      x_[j] = lo_[j];
      flipped = true;
    } else if (s == VarState::kFree && std::abs(d_[j]) > options_.dual_tol) {
      return false;
    }
  }
  if (flipped) ComputePrimal();
  return true;
}

SimplexEngine::Result SimplexEngine::SolvePrimal() {
  call_start_ = iterations_;
  Refactor();
  const int total = n_ + m_;
  std::vector<double> alpha;
  std::vector<double> rho;
  std::vector<double> phase1_cost(total, 0.0);
  std::vector<double> d1;
  bool bland = false;
  int64_t stall = 0;
  const int64_t stall_limit = 10LL * (n_ + m_);
  double best_measure = kInfinity;
  bool was_phase1 = true;

  for (;;) {
    if (CheckLimits()) {
      ComputeDuals(cost_, d_);
      return Result::kTimeLimit;
    }
    if (pivots_since_refactor_ >= options_.refactor_interval) Refactor();

    double infeas = 0.0;
    for (int p = 0; p < m_; ++p) infeas += Infeasibility(head_[p]);
    const bool phase1 = infeas > options_.primal_tol;
    const std::vector<double>* d = &d_;
    double measure;
    if (phase1) {
      std::fill(phase1_cost.begin(), phase1_cost.end(), 0.0);
      for (int p = 0; p < m_; ++p) {
        int j = head_[p];
        if (x_[j] < lo_[j] - options_.primal_tol) phase1_cost[j] = -1.0;
        if (x_[j] > hi_[j] + options_.primal_tol) phase1_cost[j] = 1.0;
      }
      ComputeDuals(phase1_cost, d1);
      d = &d1;
      measure = infeas;
    } else {
      if (was_phase1) {
        ComputeDuals(cost_, d_);
        best_measure = kInfinity;
        stall = 0;
      }
      measure = Objective();
    }
    was_phase1 = phase1;

    // Pricing.
    int q = -1;
    double best_score = 0.0;
    for (int j = 0; j < total; ++j) {
      VarState s = state_[j];
      if (s == VarState::kBasic || lo_[j] == hi_[j]) continue;
      double dj = (*d)[j];
      bool eligible = (s == VarState::kAtLower && dj < -options_.dual_tol) ||
                      (s == VarState::kAtUpper && dj > options_.dual_tol) ||
                      (s == VarState::kFree && std::abs(dj) > options_.dual_tol);
      if (!eligible) continue;
      if (bland) {
        q = j;
        break;
      }
      if (std::abs(dj) > best_score) {
        best_score = std::abs(dj);
        q = j;
      }
    }
    if (q < 0) {
      if (phase1) {
        // Phase 1 does not maintain d_; leave it valid for a later dual solve.
        ComputeDuals(cost_, d_);
        return Result::kInfeasible;
      }
      return Result::kOptimal;
    }
    const double dir = (*d)[q] < 0.0 ? 1.0 : -1.0;
    Ftran(q, alpha);

    // Harris two-pass ratio test.
    const double tol = options_.primal_tol;
    auto limit_of = [&](int p, double slack, double* target) -> double {
      int j = head_[p];
      double rate = -dir * alpha[p];
      double x = x_[j];
      if (phase1 && x < lo_[j] - tol) {
        if (rate > 0.0) {
          *target = lo_[j];
          return (lo_[j] - x + slack) / rate;
        }
        return kInfinity;
      }
      if (phase1 && x > hi_[j] + tol) {
        if (rate < 0.0) {
          *target = hi_[j];
          return (x - hi_[j] + slack) / -rate;
        }
        return kInfinity;
      }
      if (rate < 0.0 && std::isfinite(lo_[j])) {
        *target = lo_[j];
        return (x - lo_[j] + slack) / -rate;
      }
      if (rate > 0.0 && std::isfinite(hi_[j])) {
        *target = hi_[j];
        return (hi_[j] - x + slack) / rate;
      }
      return kInfinity;
    };
    double t_max = kInfinity;
    for (int p = 0; p < m_; ++p) {
      if (std::abs(alpha[p]) <= options_.pivot_tol) continue;
      double target;
      t_max = std::min(t_max, limit_of(p, tol, &target));
    }
    int leave = -1;
    double leave_target = 0.0;
    double step = kInfinity;
    double best_alpha = 0.0;
    for (int p = 0; p < m_; ++p) {
      if (std::abs(alpha[p]) <= options_.pivot_tol) continue;
      double target = 0.0;
      double exact = limit_of(p, 0.0, &target);
      if (exact > t_max) continue;
      bool better = bland ? (leave < 0 || exact < step - 1e-12 ||
                             (exact <= step + 1e-12 && head_[p] < head_[leave]))
                          : std::abs(alpha[p]) > best_alpha;
      if (better) {
        leave = p;
        leave_target = target;
        step = exact;
        best_alpha = std::abs(alpha[p]);
      }
    }
    step = std::max(step, 0.0);
    double flip = std::isfinite(lo_[q]) && std::isfinite(hi_[q]) ? hi_[q] - lo_[q] : kInfinity;
    if (leave < 0 && !std::isfinite(flip)) {
      if (phase1) throw SimplexStalled("phase 1 ray without blocking row");
      ComputeDuals(cost_, d_);
      return Result::kUnbounded;
    }
    ++iterations_;
    if (leave < 0 || flip <= step) {
      // Bound flip of the entering column; the basis is unchanged.
      for (int p = 0; p < m_; ++p) x_[head_[p]] -= dir * flip * alpha[p];
      if (state_[q] == VarState::kAtLower) {
        state_[q] = VarState::kAtUpper;
        x_[q] = hi_[q];
      } else {
        state_[q] = VarState::kAtLower;
        x_[q] = lo_[q];
      }
    } else {
      const int leaving = head_[leave];
      const double rate = -dir * alpha[leave];
      for (int p = 0; p < m_; ++p) x_[head_[p]] -= dir * step * alpha[p];
      x_[q] += dir * step;
      x_[leaving] = leave_target;
      if (!phase1) {
        // Update reduced costs with row `leave` of the tableau.
        BinvRow(leave, rho);
        double theta = d_[q] / alpha[leave];
        for (int j = 0; j < total; ++j) {
          if (state_[j] == VarState::kBasic || j == q) continue;
          double arj = ColumnDot(j, rho);
          if (arj != 0.0) d_[j] -= theta * arj;
        }
        d_[leaving] = -theta;
        d_[q] = 0.0;
      }
      Pivot(leave, q, alpha);
      if (lo_[leaving] == hi_[leaving]) {
        state_[leaving] = VarState::kAtLower;
      } else {
        state_[leaving] = (leave_target == lo_[leaving] && rate < 0.0) ||
                                  (phase1 && leave_target == lo_[leaving])
                              ? VarState::kAtLower
                              : VarState::kAtUpper;
      }
    }
    if (measure < best_measure - 1e-12 * (1.0 + std::abs(measure))) {
      best_measure = measure;
      stall = 0;
    } else if (++stall > stall_limit) {
      bland = true;
    }
  }
}

SimplexEngine::Result SimplexEngine::SolveDual(double cutoff) {
  call_start_ = iterations_;
  if (pivots_since_refactor_ >= options_.refactor_interval) {
    Refactor();
  } else if (primal_dirty_) {
    ComputePrimal();
  }
  if (!RepairDualInfeasibility()) return SolvePrimal();
  const int total = n_ + m_;
  std::vector<double> rho;
  std::vector<double> alpha;
  std::vector<double> row_alpha(total, 0.0);
  int64_t stall = 0;
  const int64_t stall_limit = 10LL * (n_ + m_);
  double best_obj = -kInfinity;
  int consistency_failures = 0;
  // An infeasibility verdict is only trusted right after a refactorization.
  bool fresh = false;
  auto confirm_infeasible = [&]() {
    if (fresh) return true;
    Refactor();
    fresh = true;
    return false;
  };

  for (;;) {
    if (CheckLimits()) return Result::kTimeLimit;
    if (pivots_since_refactor_ >= options_.refactor_interval) {
      Refactor();
      if (!RepairDualInfeasibility()) return SolvePrimal();
    }
    double obj = Objective();
    if (obj > cutoff) return Result::kCutoff;
    if (obj > best_obj + 1e-12 * (1.0 + std::abs(obj))) {
      best_obj = obj;
      stall = 0;
    } else if (++stall > stall_limit) {
      // Degenerate cycling in the dual; finish with the primal.
      return SolvePrimal();
    }

    // Leaving row: largest primal infeasibility.
    int r = -1;
    double worst = options_.primal_tol;
    for (int p = 0; p < m_; ++p) {
      double v = Infeasibility(head_[p]);
      if (v > worst) {
        worst = v;
        r = p;
      }
    }
    if (r < 0) return Result::kOptimal;
    const int leaving = head_[r];
    const bool to_lower = x_[leaving] < lo_[leaving];
    const double sgn = to_lower ? -1.0 : 1.0;

    BinvRow(r, rho);
    // Harris two-pass ratio test on the dual.
    double t_max = kInfinity;
    for (int j = 0; j < total; ++j) {
      row_alpha[j] = 0.0;
      VarState s = state_[j];
      if (s == VarState::kBasic) continue;
      // Fixed columns never enter but their reduced costs must stay current.
      double a = ColumnDot(j, rho);
      row_alpha[j] = a;
      if (lo_[j] == hi_[j]) continue;
      double at = sgn * a;
      bool eligible = (s == VarState::kAtLower && at > options_.pivot_tol) ||
                      (s == VarState::kAtUpper && at < -options_.pivot_tol) ||
                      (s == VarState::kFree && std::abs(at) > options_.pivot_tol);
      if (!eligible) continue;
      t_max = std::min(t_max, (std::abs(d_[j]) + options_.dual_tol) / std::abs(at));
    }
    if (!std::isfinite(t_max)) {
      if (confirm_infeasible()) return Result::kInfeasible;
      if (!RepairDualInfeasibility()) return SolvePrimal();
      continue;
    }
    int q = -1;
    double best_abs = 0.0;
    for (int j = 0; j < total; ++j) {
      VarState s = state_[j];
      if (s == VarState::kBasic || lo_[j] == hi_[j]) continue;
      double at = sgn * row_alpha[j];
      bool eligible = (s == VarState::kAtLower && at > options_.pivot_tol) ||
                      (s == VarState::kAtUpper && at < -options_.pivot_tol) ||
                      (s == VarState::kFree && std::abs(at) > options_.pivot_tol);
      if (!eligible) continue;
      if (std::abs(d_[j]) / std::abs(at) <= t_max && std::abs(at) > best_abs) {
        best_abs = std::abs(at);
        q = j;
      }
    }
    if (q < 0) {
      if (confirm_infeasible()) return Result::kInfeasible;
      if (!RepairDualInfeasibility()) return SolvePrimal();
      continue;
    }

    Ftran(q, alpha);
    const double arq = row_alpha[q];
    if (std::abs(alpha[r] - arq) > 1e-7 * (1.0 + std::abs(arq))) {
      if (++consistency_failures > 3) throw SimplexStalled("unstable basis in dual simplex");
      Refactor();
      if (!RepairDualInfeasibility()) return SolvePrimal();
      continue;
    }
    ++iterations_;
    fresh = false;
    const double theta = d_[q] / alpha[r];
    const double target = to_lower ? lo_[leaving] : hi_[leaving];
    const double delta = (x_[leaving] - target) / alpha[r];
    for (int p = 0; p < m_; ++p) {
      if (alpha[p] != 0.0) x_[head_[p]] -= alpha[p] * delta;
    }
    x_[q] += delta;
    x_[leaving] = target;
    for (int j = 0; j < total; ++j) {
      if (row_alpha[j] != 0.0 && state_[j] != VarState::kBasic) d_[j] -= theta * row_alpha[j];
    }
    d_[leaving] = -theta;
    d_[q] = 0.0;
    Pivot(r, q, alpha);
    state_[leaving] = to_lower || lo_[leaving] == hi_[leaving] ? VarState::kAtLower
                                                              : VarState::kAtUpper;
  }
}

double SimplexEngine::Objective() const {
  double sum = objective_constant_;
  for (int j = 0; j < n_; ++j) sum += cost_[j] * x_[j];
  return sum;
}

std::vector<double> SimplexEngine::StructuralValues() const {
  return std::vector<double>(x_.begin(), x_.begin() + n_);
}

std::vector<double> SimplexEngine::RowDuals() const {
  std::vector<double> y(m_, 0.0);
  for (int c = 0; c < m_; ++c) {
    const double* col = binv_.data() + static_cast<size_t>(c) * m_;
    double sum = 0.0;
    for (int r = 0; r < m_; ++r) sum += cost_[head_[r]] * col[r];
    y[c] = sum * row_scale_[c];
  }
  return y;
}

std::vector<double> SimplexEngine::ReducedCosts() const {
  std::vector<double> d(d_.begin(), d_.begin() + n_);
  for (int j = 0; j < n_; ++j) {
    if (state_[j] == VarState::kBasic) d[j] = 0.0;
  }
  return d;
}

int SimplexEngine::BasicStructurals() const {
  int count = 0;
  for (int p = 0; p < m_; ++p) count += head_[p] < n_ ? 1 : 0;
  return count;
}

LpSolution SolveLp(const MilpModel& model) {
  SimplexEngine engine(model);
  LpSolution out;
  SimplexEngine::Result res = engine.SolvePrimal();
  out.iterations = engine.iterations();
  switch (res) {
    case SimplexEngine::Result::kOptimal:
      out.status = LpStatus::kOptimal;
      break;
    case SimplexEngine::Result::kUnbounded:
      out.status = LpStatus::kUnbounded;
      return out;
    default:
      out.status = LpStatus::kInfeasible;
      return out;
  }
  out.x = engine.StructuralValues();
  out.objective = engine.Objective();
  out.row_duals = engine.RowDuals();
  out.reduced_costs = engine.ReducedCosts();
  out.basic_structurals = engine.BasicStructurals();
  out.basic_slacks = engine.num_rows() - out.basic_structurals;
  return out;
}

}  // namespace iasolve
