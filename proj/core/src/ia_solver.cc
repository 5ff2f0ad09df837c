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

#include "iasolve/ia_solver.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "iasolve/kkt_master.h"
#include "iasolve/lp_export.h"

namespace iasolve {
namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

double RelativeGap(double ub, double lb) {
  return (ub - lb) / std::max(std::abs(lb), 1e-10);
}

// Box of the term, widened to the breakpoint extent (simplex sets leave it).
std::pair<std::vector<double>, std::vector<double>> Domain(const Problem& problem,
                                                           const BreakpointSet& set) {
  auto [lo, hi] = TermBounds(problem, set.term());
  auto [ext_lo, ext_hi] = set.Extent();
  for (size_t i = 0; i < lo.size(); ++i) {
    lo[i] = std::min(lo[i], ext_lo[i]);
    hi[i] = std::max(hi[i], ext_hi[i]);
  }
  return {lo, hi};
}

struct TermState {
  LipschitzEstimate base;  // over the domain, computed once
};

// Lipschitz constant of phi-hat: the analytic one, raised to the steepest
// sampled segment for scalar terms whose derivative blows up at a bound.
LipschitzEstimate Effective(const LipschitzEstimate& base, const BreakpointSet& set) {
  LipschitzEstimate k = base;
  k.constant = std::max(k.constant, set.MaxAdjacentSlope());
  return k;
}

BigMValues PaddedBigM(const BigMValues& raw) {
  BigMValues b = raw;
  b.m1 = raw.m1 * (1.0 + 1e-7) + 1e-7;
  return b;
}

std::vector<double> Subvector(std::span<const double> x, const std::vector<int>& idx) {
  std::vector<double> out;
  for (int i : idx) out.push_back(x[i]);
  return out;
}

}  // namespace

std::string_view IAStatusName(IAStatus status) {
  switch (status) {
    case IAStatus::kOptimal:
      return "optimal";
    case IAStatus::kGapReached:
      return "gapReached";
    case IAStatus::kTimeLimit:
      return "timeLimit";
    case IAStatus::kIterLimit:
      return "iterLimit";
    case IAStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

std::optional<IAStatus> ParseIAStatus(std::string_view name) {
  for (IAStatus s : {IAStatus::kOptimal, IAStatus::kGapReached, IAStatus::kTimeLimit,
                     IAStatus::kIterLimit, IAStatus::kInfeasible}) {
    if (IAStatusName(s) == name) return s;
  }
  return std::nullopt;
}

IAResult Solve(const Problem& problem, const IAParams& params) {
  const Clock::time_point start = Clock::now();
  if (!(params.epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  std::vector<Diagnostic> diagnostics = Validate(problem);
  if (!diagnostics.empty()) {
    throw std::invalid_argument("invalid problem: " + FormatDiagnostic(diagnostics.front()));
  }
  std::unique_ptr<MilpBackend> backend = MakeBackend(params.backend, params.export_dir);
  if (!backend) throw std::invalid_argument("unknown backend: " + params.backend);

  IAResult result;
  result.ub = kInfinity;
  result.lb = -kInfinity;
  double max_coef = 0.0;
  for (const auto& [idx, coef] : problem.objective_linear.terms) {
    max_coef = std::max(max_coef, std::abs(coef));
  }
  result.linear_lipschitz = max_coef * std::sqrt(static_cast<double>(problem.num_variables()));

  // Initial sets and the fixed ingredients of the BigM values.
  std::vector<BreakpointSet> sets;
  std::vector<TermState> states;
  for (size_t t = 0; t < problem.concave_terms.size(); ++t) {
    const ConcaveTerm& term = problem.concave_terms[t];
    auto [lo, hi] = TermBounds(problem, term);
    sets.push_back(InitialSet(static_cast<int>(t), term, lo, hi, params.init_mode));
    if (t < params.extra_points.size()) {
      for (const std::vector<double>& z : params.extra_points[t]) {
        if (static_cast<int>(z.size()) != term.dimension()) {
          throw std::invalid_argument("extra point of wrong dimension for term " +
                                      std::to_string(t));
        }
        for (int i = 0; i < term.dimension(); ++i) {
          if (z[i] < lo[i] || z[i] > hi[i]) {
            throw std::invalid_argument("extra point outside the box of term " +
                                        std::to_string(t));
          }
        }
        sets.back().Add(z, 0);
      }
    }
    auto [dlo, dhi] = Domain(problem, sets.back());
    states.push_back({LipschitzConstant(term, dlo, dhi)});
  }
  std::vector<BreakpointSet> csets;
  std::vector<BigMValues> cbig_m;
  for (size_t q = 0; q < problem.concave_constraints.size(); ++q) {
    const ConcaveConstraint& cc = problem.concave_constraints[q];
    auto [lo, hi] = TermBounds(problem, cc.term);
    csets.push_back(InitialSet(static_cast<int>(q), cc.term, lo, hi, params.init_mode));
    auto [dlo, dhi] = Domain(problem, csets.back());
    LipschitzEstimate k = LipschitzConstant(cc.term, dlo, dhi);
    BigMValues b = BigM(cc.term, dlo, dhi, k);
    if (cc.big_m) {
      b.m1 = *cc.big_m;
    } else {
      b.m1 = 10.0 * (k.constant * b.delta_z_max + (b.phi_max - b.phi_min));
      result.warnings.push_back("concave_constraints[" + std::to_string(q) +
                                "]: no big_m given, using " + std::to_string(b.m1));
    }
    cbig_m.push_back(b);
  }

  auto finish = [&](IAStatus status) {
    result.status = status;
    if (result.has_incumbent && std::isfinite(result.lb)) {
      result.gap = RelativeGap(result.ub, result.lb);
    } else {
      result.gap = kInfinity;
    }
    result.final_sets = std::move(sets);
    result.wall_time_sec = Seconds(start);
    return result;
  };

  for (int c = 1;; ++c) {
    if (c > params.max_iterations) return finish(IAStatus::kIterLimit);
    const double remaining = params.max_wall_time_sec - Seconds(start);
    if (remaining <= 0.0) return finish(IAStatus::kTimeLimit);

    IterationRecord rec;
    rec.iteration = c;
    std::vector<BigMValues> big_m;
    for (size_t t = 0; t < sets.size(); ++t) {
      auto [dlo, dhi] = Domain(problem, sets[t]);
      LipschitzEstimate k = Effective(states[t].base, sets[t]);
      big_m.push_back(PaddedBigM(BigM(sets[t].term(), dlo, dhi, k)));
      rec.m1.push_back(big_m.back().m1);
      rec.lipschitz.push_back(k.constant);
      rec.breakpoints.push_back(sets[t].size());
    }
    MasterModel master = BuildMaster(problem, sets, big_m, csets, cbig_m);
    rec.master_rows = master.model.num_constraints();
    rec.master_cols = master.model.num_variables();
    rec.master_binaries = master.model.num_integral();

    SolveParams milp = params.milp_params;
    milp.time_limit_sec = std::min(milp.time_limit_sec, remaining);
    MilpSolution sol = backend->Solve(master.model, milp);
    rec.milp_nodes = sol.nodes_explored;
    if (sol.status == MilpStatus::kInfeasible) {
      rec.master_objective = kInfinity;
      rec.ub_best = result.ub;
      rec.wall_time_sec = Seconds(start);
      result.iterations.push_back(std::move(rec));
      return finish(IAStatus::kInfeasible);
    }
    if (sol.status == MilpStatus::kTimeLimit) {
      // The best bound of the interrupted master still bounds the problem.
      if (std::isfinite(sol.best_bound)) result.lb = std::max(result.lb, sol.best_bound);
      return finish(IAStatus::kTimeLimit);
    }
    const double lb = sol.status == MilpStatus::kOptimal ? sol.objective : sol.best_bound;
    MasterSolution ms = ExtractSolution(master, sets, sol);
    rec.master_objective = lb;
    result.lb = std::max(result.lb, lb);

    // Snap z onto the variable domains before evaluating the true objective.
    std::vector<double> z = ms.x;
    for (int j = 0; j < problem.num_variables(); ++j) {
      const Variable& v = problem.variables[j];
      if (v.is_integral()) z[j] = std::round(z[j]);
      z[j] = std::clamp(z[j], v.lower, v.upper);
    }
    rec.z = z;
    if (MaxViolation(problem, z) <= 1e-6) {
      double value = EvalObjective(problem, z);
      rec.ub_candidate = value;
      if (value < result.ub) {
        result.ub = value;
        result.incumbent = z;
        result.has_incumbent = true;
      }
    }
    rec.ub_best = result.ub;

    bool all_duplicate = true;
    for (BreakpointSet& set : sets) {
      AddResult r = set.Add(Subvector(z, set.term().var_indices), c);
      rec.added.push_back(r == AddResult::kAdded ? 1 : 0);
      all_duplicate = all_duplicate && r == AddResult::kDuplicate;
    }
    for (BreakpointSet& set : csets) {
      AddResult r = set.Add(Subvector(z, set.term().var_indices), c);
      all_duplicate = all_duplicate && r == AddResult::kDuplicate;
    }
    rec.wall_time_sec = Seconds(start);
    result.iterations.push_back(std::move(rec));

    if (result.has_incumbent) {
      const double tight = 1e-6 * std::max(1.0, std::abs(result.lb));
      if (all_duplicate || RelativeGap(result.ub, result.lb) <= params.epsilon) {
        return finish(result.ub - result.lb <= tight || all_duplicate ? IAStatus::kOptimal
                                                                      : IAStatus::kGapReached);
      }
    } else if (all_duplicate) {
      throw std::runtime_error("master repeated an infeasible point");
    }
  }
}

std::vector<std::string> CheckTrace(const IAResult& result,
                                    std::optional<double> known_optimum) {
  std::vector<std::string> out;
  const auto& it = result.iterations;
  auto scale = [](double v) { return std::max(1.0, std::abs(v)); };
  for (size_t c = 0; c < it.size(); ++c) {
    const IterationRecord& r = it[c];
    if (!std::isfinite(r.master_objective)) continue;
    const std::string at = "iteration " + std::to_string(r.iteration) + ": ";
    if (result.has_incumbent && r.master_objective > result.ub + 1e-6 * scale(result.ub)) {
      out.push_back(at + "lower bound " + std::to_string(r.master_objective) +
                    " exceeds the upper bound " + std::to_string(result.ub));
    }
    if (known_optimum) {
      if (r.master_objective > *known_optimum + 1e-6 * scale(*known_optimum)) {
        out.push_back(at + "lower bound above the known optimum");
      }
      if (r.ub_candidate && *r.ub_candidate < *known_optimum - 1e-6 * scale(*known_optimum)) {
        out.push_back(at + "upper bound below the known optimum");
      }
    }
    if (c + 1 < it.size()) {
      const IterationRecord& n = it[c + 1];
      if (!std::isfinite(n.master_objective)) continue;
      if (n.master_objective < r.master_objective - 1e-9 * scale(r.master_objective)) {
        out.push_back(at + "lower bound decreased to " + std::to_string(n.master_objective));
      }
      bool all_dup = !r.added.empty() &&
                     std::all_of(r.added.begin(), r.added.end(), [](int a) { return a == 0; });
      if (all_dup) out.push_back(at + "repeated master solution is not the last iteration");
      if (r.ub_candidate && r.z.size() == n.z.size()) {
        double dist = 0.0;
        for (size_t j = 0; j < r.z.size(); ++j) dist += (r.z[j] - n.z[j]) * (r.z[j] - n.z[j]);
        dist = std::sqrt(dist);
        double k2 = 0.0;
        for (double k : n.lipschitz) k2 += k;
        double gap = *r.ub_candidate - n.master_objective;
        if (gap > (result.linear_lipschitz + k2) * dist + 1e-6) {
          out.push_back(at + "gap " + std::to_string(gap) + " exceeds (K1 + K2) delta = " +
                        std::to_string((result.linear_lipschitz + k2) * dist));
        }
      }
    }
  }
  if (!it.empty()) {
    const IterationRecord& last = it.back();
    bool all_dup = !last.added.empty() &&
                   std::all_of(last.added.begin(), last.added.end(), [](int a) { return a == 0; });
    if (all_dup && result.has_incumbent &&
        result.ub - result.lb > 1e-6 * scale(result.lb)) {
      out.push_back("repeated master solution but the final gap is " +
                    std::to_string(result.ub - result.lb));
    }
  }
  return out;
}

}  // namespace iasolve
