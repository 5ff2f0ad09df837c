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

#include "iasolve/branch_and_bound.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "iasolve/simplex.h"

namespace iasolve {
namespace {

using Clock = std::chrono::steady_clock;

constexpr double kExactIntegral = 1e-12;

struct Node {
  std::vector<double> lower;  // bounds of the integral variables only
  std::vector<double> upper;
  double bound = -kInfinity;
  int depth = 0;
  int64_t id = 0;
};

// Heap order: true when a should be explored after b.
bool ExploreLater(const std::unique_ptr<Node>& a, const std::unique_ptr<Node>& b) {
  if (a->bound != b->bound) return a->bound > b->bound;
  if (a->depth != b->depth) return a->depth < b->depth;
  return a->id > b->id;
}

double Fractionality(double v) {
  double f = v - std::floor(v);
  return std::min(f, 1.0 - f);
}

class BuiltinBackend : public MilpBackend {
 public:
  std::string_view name() const override { return "builtin"; }
  MilpSolution Solve(const MilpModel& model, const SolveParams& params) override {
    return SolveMilp(model, params);
  }
};

}  // namespace

PresolveResult PresolveSingletons(const MilpModel& model) {
  PresolveResult out;
  out.model.name = model.name;
  out.model.variables = model.variables;
  out.model.objective = model.objective;
  std::vector<Variable>& vars = out.model.variables;
  for (int i = 0; i < model.num_constraints(); ++i) {
    const LinearConstraint& row = model.constraints[i];
    std::map<int, double> merged;
    for (const auto& [idx, coef] : row.expr.terms) merged[idx] += coef;
    std::erase_if(merged, [](const auto& kv) { return kv.second == 0.0; });
    const double rhs = row.rhs - row.expr.constant;
    if (merged.size() > 1) {
      out.model.AddConstraint(row.expr, row.sense, row.rhs, model.constraint_names[i]);
      continue;
    }
    ++out.rows_removed;
    if (merged.empty()) {
      bool ok = (row.sense != Sense::kLessEqual || rhs >= -1e-9) &&
                (row.sense != Sense::kGreaterEqual || rhs <= 1e-9) &&
                (row.sense != Sense::kEqual || std::abs(rhs) <= 1e-9);
      if (!ok) out.infeasible = true;
      continue;
    }
    const auto [j, a] = *merged.begin();
    const double value = rhs / a;
    const bool caps_upper = (row.sense == Sense::kLessEqual) == (a > 0.0);
    if (row.sense == Sense::kEqual || caps_upper) vars[j].upper = std::min(vars[j].upper, value);
    if (row.sense == Sense::kEqual || !caps_upper) vars[j].lower = std::max(vars[j].lower, value);
  }
  for (Variable& v : vars) {
    if (v.is_integral()) {
      v.lower = std::ceil(v.lower - 1e-9);
      v.upper = std::floor(v.upper + 1e-9);
    }
    if (v.lower > v.upper + 1e-9) {
      out.infeasible = true;
    } else if (v.lower > v.upper) {
      v.upper = v.lower;
    }
  }
  return out;
}

MilpSolution SolveMilp(const MilpModel& input, const SolveParams& params) {
  const Clock::time_point start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(params.time_limit_sec));
  MilpSolution sol;
  auto finish = [&]() {
    sol.wall_time_sec = std::chrono::duration<double>(Clock::now() - start).count();
    return sol;
  };

  PresolveResult pre = PresolveSingletons(input);
  if (pre.infeasible) {
    sol.status = MilpStatus::kInfeasible;
    sol.best_bound = kInfinity;
    return finish();
  }
  const MilpModel& model = pre.model;
  std::vector<int> ints;
  for (int j = 0; j < model.num_variables(); ++j) {
    if (model.variables[j].is_integral()) ints.push_back(j);
  }
  const int num_ints = static_cast<int>(ints.size());

  SimplexEngine::Options options;
  options.deadline = deadline;
  SimplexEngine engine(model, options);
  std::vector<double> cur_lo(num_ints);
  std::vector<double> cur_hi(num_ints);
  for (int k = 0; k < num_ints; ++k) {
    cur_lo[k] = model.variables[ints[k]].lower;
    cur_hi[k] = model.variables[ints[k]].upper;
  }
  auto apply = [&](const std::vector<double>& lo, const std::vector<double>& hi) {
    for (int k = 0; k < num_ints; ++k) {
      if (lo[k] != cur_lo[k] || hi[k] != cur_hi[k]) {
        engine.SetBounds(ints[k], lo[k], hi[k]);
        cur_lo[k] = lo[k];
        cur_hi[k] = hi[k];
      }
    }
  };
  bool first_solve = true;
  auto reoptimize = [&](double cutoff) {
    try {
      if (first_solve) {
        first_solve = false;
        return engine.SolvePrimal();
      }
      return engine.SolveDual(cutoff);
    } catch (const SimplexStalled&) {
      engine.ResetBasis();
      return engine.SolvePrimal();
    }
  };

  double incumbent = kInfinity;
  auto prune_tol = [&]() {
    double scale = std::isfinite(incumbent) ? std::max(1.0, std::abs(incumbent)) : 1.0;
    return std::max(1e-9, params.relative_gap * scale);
  };
  auto offer = [&](std::vector<double> x) {
    for (int j : ints) x[j] = std::round(x[j]);
    double value = model.objective.Evaluate(x);
    if (value < incumbent) {
      incumbent = value;
      sol.x = std::move(x);
      sol.has_incumbent = true;
    }
  };

  std::vector<std::unique_ptr<Node>> open;
  const bool depth_first = params.node_selection == NodeSelection::kDepthFirst;
  auto push = [&](std::unique_ptr<Node> node) {
    open.push_back(std::move(node));
    if (!depth_first) std::push_heap(open.begin(), open.end(), ExploreLater);
  };
  auto pop = [&]() {
    if (!depth_first) std::pop_heap(open.begin(), open.end(), ExploreLater);
    std::unique_ptr<Node> node = std::move(open.back());
    open.pop_back();
    return node;
  };

  int64_t next_id = 0;
  auto root = std::make_unique<Node>();
  root->lower = cur_lo;
  root->upper = cur_hi;
  root->id = next_id++;
  push(std::move(root));

  double pruned_bound = kInfinity;
  bool timed_out = false;
  while (!open.empty()) {
    if (Clock::now() > deadline) {
      timed_out = true;
      break;
    }
    std::unique_ptr<Node> node = pop();
    if (node->bound >= incumbent - prune_tol()) {
      pruned_bound = std::min(pruned_bound, node->bound);
      continue;
    }
    apply(node->lower, node->upper);
    const double cutoff = std::isfinite(incumbent) ? incumbent - prune_tol() : kInfinity;
    SimplexEngine::Result res = reoptimize(cutoff);
    ++sol.nodes_explored;
    if (res == SimplexEngine::Result::kTimeLimit) {
      timed_out = true;
      push(std::move(node));
      break;
    }
    if (res == SimplexEngine::Result::kInfeasible) continue;
    if (res == SimplexEngine::Result::kUnbounded) {
      throw std::runtime_error("LP relaxation is unbounded");
    }
    const double value = engine.Objective();
    if (res == SimplexEngine::Result::kCutoff || value >= incumbent - prune_tol()) {
      pruned_bound = std::min(pruned_bound, value);
      continue;
    }
    std::vector<double> x = engine.StructuralValues();
    int branch = -1;
    double worst = 0.0;
    for (int k = 0; k < num_ints; ++k) {
      double f = Fractionality(x[ints[k]]);
      if (f > worst) {
        worst = f;
        branch = k;
      }
    }
    if (worst <= kExactIntegral) {
      offer(std::move(x));
      continue;
    }
    if (worst <= kIntegralityTolerance) {
      // Nearly integral: fix the integers and re-solve so that tiny
      // fractional values cannot switch big-M rows on or off.
      std::vector<double> fixed(num_ints);
      for (int k = 0; k < num_ints; ++k) fixed[k] = std::round(x[ints[k]]);
      apply(fixed, fixed);
      SimplexEngine::Result polish = reoptimize(kInfinity);
      bool settled = false;
      if (polish == SimplexEngine::Result::kOptimal) {
        double polished = engine.Objective();
        offer(engine.StructuralValues());
        settled = polished <= value + 1e-9 * std::max(1.0, std::abs(value));
      }
      apply(node->lower, node->upper);
      if (polish == SimplexEngine::Result::kTimeLimit) {
        timed_out = true;
        push(std::move(node));
        break;
      }
      if (settled) continue;
    }
    const int j = ints[branch];
    auto down = std::make_unique<Node>();
    down->lower = node->lower;
    down->upper = node->upper;
    down->upper[branch] = std::floor(x[j]);
    down->bound = value;
    down->depth = node->depth + 1;
    auto up = std::make_unique<Node>();
    up->lower = node->lower;
    up->upper = node->upper;
    up->lower[branch] = std::ceil(x[j]);
    up->bound = value;
    up->depth = node->depth + 1;
    if (depth_first) {
      up->id = next_id++;
      down->id = next_id++;
      push(std::move(up));
      push(std::move(down));
    } else {
      down->id = next_id++;
      up->id = next_id++;
      push(std::move(down));
      push(std::move(up));
    }
  }

  sol.lp_iterations = engine.iterations();
  sol.objective = incumbent;
  double bound = std::min(pruned_bound, incumbent);
  if (timed_out) {
    for (const auto& node : open) bound = std::min(bound, node->bound);
    sol.best_bound = bound;
    sol.status = MilpStatus::kTimeLimit;
    return finish();
  }
  if (!sol.has_incumbent) {
    sol.status = MilpStatus::kInfeasible;
    sol.best_bound = kInfinity;
    return finish();
  }
  sol.best_bound = bound;
  sol.status = incumbent - bound <= 1e-6 * std::max(1.0, std::abs(incumbent))
                   ? MilpStatus::kOptimal
                   : MilpStatus::kGapLimit;
  return finish();
}

std::unique_ptr<MilpBackend> MakeBuiltinBackend() {
  return std::make_unique<BuiltinBackend>();
}

}  // namespace iasolve
